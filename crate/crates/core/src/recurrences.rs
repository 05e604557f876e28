//! Dynamic programs for `A_{n,t}` and `B_{n,k}`.
//!
//! Nothing in here calls the closed forms, so these tables can be compared
//! against them as an independent route.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numeric::{catalan_prefix, narrow, Count};

/// Dense table of counts indexed by `(n, column)` with `n` in `0..=n_max`
/// and column in `0..=col_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    n_max: usize,
    col_max: usize,
    cells: Vec<Count>,
}

impl CountTable {
    fn filled(n_max: usize, col_max: usize) -> Self {
        Self {
            n_max,
            col_max,
            cells: vec![Count::zero(); (n_max + 1) * (col_max + 1)],
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn col_max(&self) -> usize {
        self.col_max
    }

    pub fn get(&self, n: usize, col: usize) -> &Count {
        assert!(
            n <= self.n_max && col <= self.col_max,
            "({n}, {col}) out of table bounds"
        );
        &self.cells[n * (self.col_max + 1) + col]
    }

    fn set(&mut self, n: usize, col: usize, value: Count) {
        self.cells[n * (self.col_max + 1) + col] = value;
    }

    /// Row `n` as a slice over columns `0..=col_max`.
    pub fn row(&self, n: usize) -> &[Count] {
        let w = self.col_max + 1;
        &self.cells[n * w..(n + 1) * w]
    }
}

/// Table of `A_{n,t}` built column by column from
/// `A_{n,t+1} = sum_{i<n} A_{n-1-i,t+1} A_{i,t}`, with `A_{0,t} = 1` and
/// `A_{n,0} = 0` for `n >= 1`.
pub fn a_recurrence(n_max: usize, t_max: usize) -> CountTable {
    let mut table = CountTable::filled(n_max, t_max);
    for t in 0..=t_max {
        table.set(0, t, Count::one());
    }
    for t in 0..t_max {
        for n in 1..=n_max {
            let value = (0..n)
                .map(|i| table.get(n - 1 - i, t + 1) * table.get(i, t))
                .sum();
            table.set(n, t + 1, value);
        }
    }
    table
}

/// Which first-passage decomposition drives the `B` recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decomposition {
    /// Split at the first return to the axis.
    FirstReturn,
    /// Split at the last visit to the axis before the end.
    LastReturn,
}

/// Table of `B_{n,k}` for `n <= n_max`, `k <= k_max`.
///
/// Boundary values: `B_{m,0} = C_m` and `B_{0,j} = 0` for `j >= 1`.
pub fn b_recurrence_table(n_max: usize, k_max: usize, route: Decomposition) -> CountTable {
    let cat = catalan_prefix(n_max);
    let mut table = CountTable::filled(n_max, k_max);
    for (m, c) in cat.iter().enumerate() {
        table.set(m, 0, c.clone());
    }
    // Row n only reads rows < n, so filling rows in order suffices.
    for n in 1..=n_max {
        for k in 1..=k_max {
            let mut acc = BigInt::zero();
            match route {
                Decomposition::FirstReturn => {
                    for i in 1..=n {
                        let head = table.get(i - 1, k - 1);
                        let tail = table.get(n - i, k);
                        acc += BigInt::from(head * &cat[n - i]);
                        acc += BigInt::from(&cat[i - 1] * tail);
                        acc -= BigInt::from(head * tail);
                    }
                }
                Decomposition::LastReturn => {
                    for j in 0..n {
                        let head = table.get(j, k);
                        let tail = table.get(n - j - 1, k - 1);
                        acc += BigInt::from(head * &cat[n - j - 1]);
                        acc += BigInt::from(&cat[j] * tail);
                        acc -= BigInt::from(head * tail);
                    }
                }
            }
            table.set(n, k, narrow(acc, "b recurrence"));
        }
    }
    table
}

/// `B_{n,k}` by the first-return recurrence.
pub fn b_recurrence_first(n: u32, k: u32) -> Count {
    assert!(k >= 1, "b_recurrence_first requires k >= 1");
    b_recurrence_table(n as usize, k as usize, Decomposition::FirstReturn)
        .get(n as usize, k as usize)
        .clone()
}

/// `B_{n,k}` by the last-return recurrence.
pub fn b_recurrence_second(n: u32, k: u32) -> Count {
    assert!(k >= 1, "b_recurrence_second requires k >= 1");
    b_recurrence_table(n as usize, k as usize, Decomposition::LastReturn)
        .get(n as usize, k as usize)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{a_bounded, b_complement, b_explicit};
    use crate::numeric::catalan;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn a_table_examples() {
        let a = a_recurrence(15, 7);
        for n in 1..=15 {
            assert_eq!(a.get(n, 1), &c(1));
            assert_eq!(a.get(n, 0), &c(0));
        }
        assert_eq!(a.get(0, 7), &c(1));
        assert_eq!(a.get(0, 0), &c(1));
        assert_eq!(a.get(6, 3), &c(89));
    }

    #[test]
    fn a_table_matches_reflection_formula() {
        let a = a_recurrence(25, 26);
        for n in 0..=25 {
            for t in 0..=26 {
                assert_eq!(a.get(n, t), &a_bounded(n as u32, t as u32), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_recurrence_first(2, 2), c(1));
        assert_eq!(b_recurrence_first(3, 2), c(4));
        assert_eq!(b_recurrence_first(6, 6), c(1));
        assert_eq!(b_recurrence_second(4, 2), c(13));
        assert_eq!(b_recurrence_second(5, 4), c(8));
        assert_eq!(b_recurrence_second(1, 2), c(0));
        assert_eq!(b_recurrence_first(0, 3), c(0));
    }

    #[test]
    fn all_b_routes_agree() {
        let first = b_recurrence_table(25, 26, Decomposition::FirstReturn);
        let second = b_recurrence_table(25, 26, Decomposition::LastReturn);
        let a = a_recurrence(25, 26);
        for n in 1..=25usize {
            for k in 1..=n {
                let expected = b_explicit(n as u32, k as u32);
                assert_eq!(first.get(n, k), &expected, "rec1 n={n} k={k}");
                assert_eq!(second.get(n, k), &expected, "rec2 n={n} k={k}");
                assert_eq!(b_complement(n as u32, k as u32), expected);
            }
            for k in 1..=n + 1 {
                assert_eq!(a.get(n, k - 1) + first.get(n, k), catalan(n));
            }
        }
    }

    #[test]
    fn exact_height_counts_sum_to_catalan() {
        let b = b_recurrence_table(25, 26, Decomposition::FirstReturn);
        for n in 1..=25usize {
            assert_eq!(b.get(n, n + 1), &c(0));
            let total: Count = (1..=n).map(|k| b.get(n, k) - b.get(n, k + 1)).sum();
            assert_eq!(total, catalan(n));
        }
    }
}
