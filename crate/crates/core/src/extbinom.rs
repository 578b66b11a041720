//! Extended binomial coefficients: the entries of Pascal's cube.
//!
//! Layer `c = 0` of the cube is the ordinary Pascal's triangle. Every deeper
//! entry is the sum of its three closest predecessors, one row up within the
//! layer (twice) and one layer down:
//!
//! ```text
//! value(a, b, c) = value(a-1, b-1, c) + value(a-1, b, c) + value(a, b, c-1)
//! ```
//!
//! Three independent evaluation routes are provided and kept deliberately
//! separate so each can serve as an oracle for the others:
//!
//! * [`ext_binom_rec`] — dynamic programming over the recurrence above,
//! * [`ext_binom_closed`] — the two-binomial product
//!   `C(b+c, c) * C(a+c, b+c)`,
//! * [`ext_binom_conv`] — a convolution of Pascal's triangle against the
//!   closed-form values of the layer below.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision non-negative coefficient value.
pub type BigCount = BigUint;

/// Cap on materialized recurrence-table cells; requests past this are
/// rejected instead of exhausting memory.
const MAX_TABLE_CELLS: u128 = 1 << 24;

/// Index `(a, b, c)` of an extended binomial coefficient: `a` is the row,
/// `b` the position within the row, `c` the cube layer.
///
/// Indices with `b < 0`, `b > a`, `a < 0`, or `c < 0` are representable and
/// evaluate to zero. This convention keeps the three-term recurrence valid at
/// the edges without special cases, exactly as `C(n, k) = 0` outside
/// `0 <= k <= n` does for Pascal's triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoeffIndex {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl CoeffIndex {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    /// True when the index lies in the nonzero region `0 <= b <= a`, `c >= 0`.
    pub fn is_in_range(&self) -> bool {
        self.a >= 0 && self.c >= 0 && self.b >= 0 && self.b <= self.a
    }
}

impl std::fmt::Display for CoeffIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(a={}, b={}, c={})", self.a, self.b, self.c)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtBinomError {
    /// The convolution route reads the layer below, so layer 0 has no
    /// expansion.
    #[error("convolution route needs a layer below: c must be >= 1, got c={0}")]
    ConvolutionLayerZero(i64),
    /// `symmetry_pair` requires an in-range subscript.
    #[error("subscript out of range: need 0 <= b <= a, got a={a}, b={b}")]
    SubscriptOutOfRange { a: i64, b: i64 },
    /// The recurrence table refused to grow past [`MAX_TABLE_CELLS`].
    #[error("recurrence table of {requested} cells exceeds the {max}-cell cap")]
    TableTooLarge { requested: u128, max: u128 },
}

/// Binomial coefficient `C(n, k)` as an exact big integer.
///
/// Returns 0 for `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigCount::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigCount::one();
    // Each partial product of j consecutive integers is divisible by j!,
    // so the running division stays exact.
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Closed-form route: `C(b+c, c) * C(a+c, b+c)`.
///
/// Equals `(a+c)! / (b! c! (a-b)!)` on the nonzero region and 0 outside it.
pub fn ext_binom_closed(idx: CoeffIndex) -> BigCount {
    if !idx.is_in_range() {
        return BigCount::zero();
    }
    let (a, b, c) = (idx.a as u64, idx.b, idx.c as u64);
    binomial(b as u64 + c, c as i64) * binomial(a + c, b + c as i64)
}

/// Convolution route: sums `C(n, m)` against the closed-form values of layer
/// `c - 1` over `0 <= n <= a`, `0 <= m <= b`.
///
/// The layer below is evaluated by [`ext_binom_closed`], not by recursing,
/// so this route stays independent of [`ext_binom_rec`]. The full `c`-fold
/// expansion is what iterating this one-step convolution yields.
pub fn ext_binom_conv(idx: CoeffIndex) -> Result<BigCount, ExtBinomError> {
    if idx.c < 1 {
        return Err(ExtBinomError::ConvolutionLayerZero(idx.c));
    }
    if !idx.is_in_range() {
        return Ok(BigCount::zero());
    }
    // Precompute the triangle rows once; the inner loop then costs a single
    // big multiplication per term.
    let triangle = pascal_rows((idx.a + idx.c) as usize);
    let mut acc = BigCount::zero();
    for n in 0..=idx.a {
        for m in 0..=idx.b.min(n) {
            let below = CoeffIndex::new(idx.a - n, idx.b - m, idx.c - 1);
            if !below.is_in_range() {
                continue;
            }
            let below_val = &triangle[(below.b + below.c) as usize][below.c as usize]
                * &triangle[(below.a + below.c) as usize][(below.b + below.c) as usize];
            acc += &triangle[n as usize][m as usize] * below_val;
        }
    }
    Ok(acc)
}

/// Rows `0..=n_max` of Pascal's triangle.
fn pascal_rows(n_max: usize) -> Vec<Vec<BigCount>> {
    let mut rows: Vec<Vec<BigCount>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![BigCount::one()]);
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        row.push(BigCount::one());
        for k in 1..n {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(BigCount::one());
        rows.push(row);
    }
    rows
}

/// Recurrence route, backed by the shared per-process memo table.
pub fn ext_binom_rec(idx: CoeffIndex) -> Result<BigCount, ExtBinomError> {
    if !idx.is_in_range() {
        return Ok(BigCount::zero());
    }
    let mut table = shared_table()
        .lock()
        // Rows are only ever pushed whole, so a panicking peer cannot have
        // left a torn entry behind; resume with whatever is filled.
        .unwrap_or_else(|poisoned| poisoned.into_inner());
    table.get(idx)
}

/// Reflection `(a, b, c) -> (a, a-b, c)` across the row's midpoint.
///
/// Both indices evaluate to the same value under every route.
pub fn symmetry_pair(idx: CoeffIndex) -> Result<CoeffIndex, ExtBinomError> {
    if idx.b < 0 || idx.b > idx.a {
        return Err(ExtBinomError::SubscriptOutOfRange { a: idx.a, b: idx.b });
    }
    Ok(CoeffIndex::new(idx.a, idx.a - idx.b, idx.c))
}

/// Memo table for the recurrence route.
///
/// Entries are stored per layer as triangular rows `layers[c][a][b]` and the
/// table grows on demand, layer by layer in `c` and then row by row in `a`,
/// so every dependency of the three-term recurrence is already present when
/// a row is filled. [`ext_binom_rec`] uses a process-wide instance behind a
/// mutex; callers that want private amortization can hold their own.
#[derive(Debug, Default)]
pub struct RecurrenceTable {
    layers: Vec<Vec<Vec<BigCount>>>,
}

impl RecurrenceTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of materialized entries.
    pub fn len(&self) -> usize {
        self.layers
            .iter()
            .map(|layer| layer.iter().map(Vec::len).sum::<usize>())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Grow the table so that all indices with `a <= a_max`, `c <= c_max`
    /// are present.
    pub fn ensure(&mut self, a_max: u64, c_max: u64) -> Result<(), ExtBinomError> {
        let a = a_max as u128;
        let requested = (a + 1) * (a + 2) / 2 * (c_max as u128 + 1);
        if requested > MAX_TABLE_CELLS {
            return Err(ExtBinomError::TableTooLarge {
                requested,
                max: MAX_TABLE_CELLS,
            });
        }
        for c in 0..=c_max as usize {
            if self.layers.len() <= c {
                self.layers.push(Vec::new());
            }
            for a in self.layers[c].len()..=a_max as usize {
                let mut row = Vec::with_capacity(a + 1);
                for b in 0..=a {
                    let value = if a == 0 {
                        BigCount::one()
                    } else {
                        let mut v = BigCount::zero();
                        if b > 0 {
                            v += &self.layers[c][a - 1][b - 1];
                        }
                        if b < a {
                            v += &self.layers[c][a - 1][b];
                        }
                        if c > 0 {
                            v += &self.layers[c - 1][a][b];
                        }
                        v
                    };
                    row.push(value);
                }
                self.layers[c].push(row);
            }
        }
        Ok(())
    }

    /// Value at `idx`, filling the table as needed. Out-of-range indices
    /// yield 0 without touching the table.
    pub fn get(&mut self, idx: CoeffIndex) -> Result<BigCount, ExtBinomError> {
        if !idx.is_in_range() {
            return Ok(BigCount::zero());
        }
        self.ensure(idx.a as u64, idx.c as u64)?;
        Ok(self.layers[idx.c as usize][idx.a as usize][idx.b as usize].clone())
    }
}

/// Process-wide memo table shared by [`ext_binom_rec`] callers.
pub fn shared_table() -> &'static Mutex<RecurrenceTable> {
    static TABLE: OnceLock<Mutex<RecurrenceTable>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(RecurrenceTable::new()))
}
