use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::matroid::MinorMatroid;
use crate::tutte;

/// A snake composition `S(a_1, …, a_n)`: the staircase of overlapping square
/// runs with `a_1 ≥ 1` squares to the right, then `a_2 ≥ 2` squares up, and
/// so on, consecutive runs sharing one square.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SnakeComposition {
    runs: Vec<u32>,
}

impl SnakeComposition {
    pub fn new(runs: Vec<u32>) -> Result<Self> {
        if runs.is_empty() {
            return Err(Error::InvalidComposition { message: "need at least one run".into() });
        }
        if runs[0] < 1 {
            return Err(Error::InvalidComposition { message: "first run must be at least 1".into() });
        }
        if let Some(i) = runs[1..].iter().position(|&a| a < 2) {
            return Err(Error::InvalidComposition {
                message: format!("run {} must be at least 2, got {}", i + 2, runs[i + 1]),
            });
        }
        Ok(SnakeComposition { runs })
    }

    /// Parses the text form `"S(2,3)"`. Whitespace- and case-insensitive.
    pub fn parse(text: &str) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let upper = cleaned.to_ascii_uppercase();
        let inner = upper
            .strip_prefix("S(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                position: 1,
                message: "expected snake text of the form S(a1,a2,...)".into(),
            })?;
        let mut runs = Vec::new();
        for (i, piece) in inner.split(',').enumerate() {
            let value: u32 = piece.parse().map_err(|_| Error::Parse {
                position: i + 1,
                message: format!("run {} is not a positive integer: '{piece}'", i + 1),
            })?;
            runs.push(value);
        }
        SnakeComposition::new(runs)
    }

    pub fn runs(&self) -> &[u32] {
        &self.runs
    }

    pub fn num_runs(&self) -> usize {
        self.runs.len()
    }

    /// Ground-set size of the induced diagram: one more than the number of
    /// unit squares, since consecutive runs overlap in one square.
    pub fn num_elements(&self) -> u32 {
        1 + self.runs[0] + self.runs[1..].iter().map(|a| a - 1).sum::<u32>()
    }

    /// The trivial snake `S(1)`, a pair of parallel elements.
    pub fn is_trivial(&self) -> bool {
        self.runs == [1]
    }

    /// The set of unit cells of the staircase, lower-left corners.
    fn cells(&self) -> Vec<(u32, u32)> {
        let mut cells = Vec::new();
        let (mut x, mut y) = (0u32, 0u32);
        for (i, &a) in self.runs.iter().enumerate() {
            if i % 2 == 0 {
                for j in 0..a {
                    cells.push((x + j, y));
                }
                x += a - 1;
            } else {
                for j in 1..a {
                    cells.push((x, y + j));
                }
                y += a - 1;
            }
        }
        cells
    }

    /// The diagram of the snake.
    pub fn diagram(&self) -> Diagram {
        let cells = self.cells();
        let width = cells.iter().map(|c| c.0).max().unwrap() + 1;
        let height = cells.iter().map(|c| c.1).max().unwrap() + 1;
        let mut columns = vec![(u32::MAX, 0u32); width as usize];
        for (x, y) in cells {
            let col = &mut columns[x as usize];
            col.0 = col.0.min(y);
            col.1 = col.1.max(y);
        }
        let ranges: Vec<std::ops::Range<u32>> =
            columns.iter().map(|&(lo, hi)| lo..hi + 1).collect();
        Diagram::from_column_cells(&ranges, height)
            .expect("snake staircases always form valid diagrams")
    }

    /// The dual snake: `S(1, a_1, …, a_n)` when `a_1 > 1`, the tail
    /// `S(a_2, …, a_n)` when `a_1 = 1 < n`, and `S(1)` for the trivial snake.
    pub fn dual(&self) -> SnakeComposition {
        let runs = if self.runs[0] > 1 {
            let mut v = vec![1];
            v.extend_from_slice(&self.runs);
            v
        } else if self.runs.len() == 1 {
            vec![1]
        } else {
            self.runs[1..].to_vec()
        };
        SnakeComposition { runs }
    }

    /// `T(S; 1, 1)` by the two-term recursion: splitting on whether a basis
    /// path passes through the far corner of the last run,
    /// `T(a_1…a_n) = T(a_1…a_{n-1}) + (a_n - 1) · T(a_1…a_{n-1} - 1)`,
    /// with a run reduced to 1 absorbed into the previous run.
    pub fn bases_recursive(&self) -> BigUint {
        // Subproblems are prefixes with a possibly-decremented last run.
        fn eval(runs: &[u32], len: usize, last: u32, memo: &mut HashMap<(usize, u32), BigUint>) -> BigUint {
            if len == 1 {
                return BigUint::from(last + 1);
            }
            if last == 1 {
                return eval(runs, len - 1, runs[len - 2], memo);
            }
            if let Some(v) = memo.get(&(len, last)) {
                return v.clone();
            }
            let stay = eval(runs, len - 1, runs[len - 2], memo);
            let drop = eval(runs, len - 1, runs[len - 2] - 1, memo);
            let v = stay + drop * BigUint::from(last - 1);
            memo.insert((len, last), v.clone());
            v
        }
        let mut memo = HashMap::new();
        eval(&self.runs, self.runs.len(), self.runs[self.runs.len() - 1], &mut memo)
    }

    /// `T(S; 1, 1)` as a sum over binary strings of length `n + 1` with no
    /// two adjacent ones, each contributing `Π (a_i - 1)^{1 - |b_{i+1} - b_i|}`.
    pub fn bases_fib_sum(&self) -> BigUint {
        let n = self.runs.len();
        let mut total = BigUint::zero();
        let mut string = vec![0u8; n + 1];
        self.fib_sum_rec(1, &mut string, &mut total);
        total
    }

    fn fib_sum_rec(&self, pos: usize, string: &mut Vec<u8>, total: &mut BigUint) {
        if pos == string.len() {
            let mut product = BigUint::one();
            for (i, &a) in self.runs.iter().enumerate() {
                if string[i] == string[i + 1] {
                    if a == 1 {
                        return; // factor (a_i - 1)^1 = 0
                    }
                    product *= BigUint::from(a - 1);
                }
            }
            *total += product;
            return;
        }
        string[pos] = 0;
        self.fib_sum_rec(pos + 1, string, total);
        if string[pos - 1] == 0 {
            string[pos] = 1;
            self.fib_sum_rec(pos + 1, string, total);
            string[pos] = 0;
        }
    }

    /// `T(S; 2, 0)`: twice the product of `2^{a_i} - 1` over even positions.
    /// The closed form assumes `a_1 ≥ 2`; a snake starting with `a_1 = 1`
    /// is evaluated through its dual with the two evaluations exchanged.
    pub fn eval20(&self) -> BigUint {
        if self.runs.len() == 1 {
            return BigUint::from(2u32);
        }
        if self.runs[0] == 1 {
            return self.dual().eval02();
        }
        BigUint::from(2u32) * product_over(&self.runs, 1)
    }

    /// `T(S; 0, 2)`: twice the product of `2^{a_i} - 1` over odd positions.
    pub fn eval02(&self) -> BigUint {
        if self.runs.len() == 1 {
            return BigUint::from(2u32) * (pow2(self.runs[0]) - BigUint::one());
        }
        if self.runs[0] == 1 {
            return self.dual().eval20();
        }
        BigUint::from(2u32) * product_over(&self.runs, 0)
    }

    /// The closed-form product `4 · Π (2^{a_i} - 1)`, which
    /// `eval20 · eval02` must equal.
    pub fn product_closed_form(&self) -> BigUint {
        let mut p = BigUint::from(4u32);
        for &a in &self.runs {
            p *= pow2(a) - BigUint::one();
        }
        p
    }

    /// Exact comparison record for the strengthened multiplicative
    /// inequality: `3 · T(2,0) · T(0,2)` against `4 · T(1,1)^2`.
    pub fn mw_margin(&self) -> MwMargin {
        let t20 = self.eval20();
        let t02 = self.eval02();
        let bases = self.bases_recursive();
        MwMargin::from_evaluations(&t20, &t02, &bases)
    }
}

fn product_over(runs: &[u32], parity: usize) -> BigUint {
    let mut p = BigUint::one();
    for (i, &a) in runs.iter().enumerate() {
        if i % 2 == parity {
            p *= pow2(a) - BigUint::one();
        }
    }
    p
}

fn pow2(a: u32) -> BigUint {
    BigUint::one() << a
}

impl fmt::Display for SnakeComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(")?;
        for (i, a) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Exact integer comparison of the Merino-Welsh products, both in the plain
/// form (`T(2,0)·T(0,2)` vs `T(1,1)^2`) and strengthened by the factor 4/3
/// (compared as `3·T(2,0)·T(0,2)` vs `4·T(1,1)^2` to stay in integers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwMargin {
    pub product: BigUint,
    pub bases_squared: BigUint,
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub satisfies_mw: bool,
    pub equality_mw: bool,
    pub satisfies_43: bool,
    pub equality_43: bool,
}

impl MwMargin {
    pub fn from_evaluations(t20: &BigUint, t02: &BigUint, bases: &BigUint) -> MwMargin {
        let product = t20 * t02;
        let bases_squared = bases * bases;
        let lhs = BigUint::from(3u32) * &product;
        let rhs = BigUint::from(4u32) * &bases_squared;
        MwMargin {
            satisfies_mw: product >= bases_squared,
            equality_mw: product == bases_squared,
            satisfies_43: lhs >= rhs,
            equality_43: lhs == rhs,
            product,
            bases_squared,
            lhs,
            rhs,
        }
    }
}

/// Outcome of checking the product identity
/// `T(S;2,0) · T(S;0,2) = 4 · Π (2^{a_i} - 1)`.
///
/// The closed forms are always compared; the subset-sum oracle cross-check
/// is skipped (`oracle_checked = false`) when the snake exceeds the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductIdentityCheck {
    pub holds: bool,
    pub oracle_checked: bool,
}

pub fn product_identity_check(s: &SnakeComposition, cap: u32) -> ProductIdentityCheck {
    let t20 = s.eval20();
    let t02 = s.eval02();
    let mut holds = &t20 * &t02 == s.product_closed_form();
    let mut oracle_checked = false;
    if s.num_elements() <= cap {
        let d = s.diagram();
        if let Ok(m) = MinorMatroid::from_diagram(&d) {
            let o20 = tutte::tutte_eval_subset_sum(&m, 2, 0, cap).expect("within cap");
            let o02 = tutte::tutte_eval_subset_sum(&m, 0, 2, cap).expect("within cap");
            holds = holds
                && o20.to_biguint().as_ref() == Some(&t20)
                && o02.to_biguint().as_ref() == Some(&t02);
            oracle_checked = true;
        }
    }
    ProductIdentityCheck { holds, oracle_checked }
}

/// Every snake composition with at most `max_runs` runs and every run at
/// most `max_entry`, in lexicographic order.
pub fn enumerate_compositions(max_runs: usize, max_entry: u32) -> Vec<SnakeComposition> {
    fn rec(cur: &mut Vec<u32>, max_runs: usize, max_entry: u32, out: &mut Vec<SnakeComposition>) {
        if !cur.is_empty() {
            out.push(SnakeComposition { runs: cur.clone() });
        }
        if cur.len() == max_runs {
            return;
        }
        let lo = if cur.is_empty() { 1 } else { 2 };
        for v in lo..=max_entry {
            cur.push(v);
            rec(cur, max_runs, max_entry, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max_runs, max_entry, &mut out);
    out
}

/// A recognized snake: the canonical composition (whose first run is
/// horizontal, using `a_1 = 1` for diagrams that visually start upward)
/// plus a flag recording that vertical start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognizedSnake {
    pub composition: SnakeComposition,
    pub first_run_vertical: bool,
}

/// Recognizes a snake diagram: at least two elements, connected, and no
/// interior lattice points. Returns `None` otherwise. Satisfies
/// `recognize_snake(s.diagram()) = s` for every valid composition.
pub fn recognize_snake(d: &Diagram) -> Option<RecognizedSnake> {
    if d.num_elements() < 2 || !d.is_connected() || !d.interior_points().is_empty() {
        return None;
    }
    let columns = d.column_cells();
    let cell_count: u32 = columns.iter().map(|c| c.end - c.start).sum();
    let has = |x: u32, y: u32| -> bool {
        (x as usize) < columns.len() && columns[x as usize].contains(&y)
    };
    if !has(0, 0) {
        return None;
    }
    if cell_count == 1 {
        return Some(RecognizedSnake {
            composition: SnakeComposition { runs: vec![1] },
            first_run_vertical: false,
        });
    }

    let mut runs: Vec<u32> = Vec::new();
    let (mut x, mut y) = (0u32, 0u32);
    let mut covered = 0u32;
    let first_run_vertical = !has(1, 0);
    if first_run_vertical {
        runs.push(1);
        covered += 1;
    } else {
        let mut len = 1;
        while has(x + 1, y) {
            x += 1;
            len += 1;
        }
        runs.push(len);
        covered += len;
    }
    loop {
        // Vertical run upward from (x, y); length 1 means no continuation.
        let mut len = 1;
        while has(x, y + 1) {
            y += 1;
            len += 1;
        }
        if len == 1 {
            break;
        }
        runs.push(len);
        covered += len - 1;
        // Horizontal run rightward.
        let mut len = 1;
        while has(x + 1, y) {
            x += 1;
            len += 1;
        }
        if len == 1 {
            break;
        }
        runs.push(len);
        covered += len - 1;
    }
    if covered != cell_count {
        return None;
    }
    Some(RecognizedSnake {
        composition: SnakeComposition { runs },
        first_run_vertical,
    })
}
