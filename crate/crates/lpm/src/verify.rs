use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::matroid::MinorMatroid;
use crate::path::{LatticePath, Step};
use crate::snake::{recognize_snake, MwMargin};
use crate::tutte;

/// Which diagrams `enumerate_diagrams` yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramFilter {
    /// Every pair (P, Q) with Q weakly above P, loops and coloops included.
    All,
    /// Loopless-coloopless: the paths share no edge.
    Lc,
    /// Loopless-coloopless and connected: the paths meet only at the corners.
    LcConnected,
}

impl DiagramFilter {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "all" => Ok(DiagramFilter::All),
            "lc" => Ok(DiagramFilter::Lc),
            "lc_connected" => Ok(DiagramFilter::LcConnected),
            other => Err(Error::Parse {
                position: 1,
                message: format!("unknown filter '{other}', expected all|lc|lc_connected"),
            }),
        }
    }
}

fn paths_lex(m: u32, r: u32) -> Vec<Vec<Step>> {
    if m == 0 && r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    if m > 0 {
        for mut tail in paths_lex(m - 1, r) {
            tail.insert(0, Step::East);
            out.push(tail);
        }
    }
    if r > 0 {
        for mut tail in paths_lex(m, r - 1) {
            tail.insert(0, Step::North);
            out.push(tail);
        }
    }
    out
}

/// Every diagram with `n` elements passing the filter, exactly once, in a
/// deterministic order: ascending rank `r`, then upper word, then lower word
/// (both lexicographic with E before N). No isomorphism reduction is applied;
/// distinct path pairs count as distinct diagrams.
pub fn enumerate_diagrams(n: u32, filter: DiagramFilter) -> Vec<Diagram> {
    let mut out = Vec::new();
    for r in 0..=n {
        let m = n - r;
        let candidates = paths_lex(m, r);
        let prefixed: Vec<(Vec<Step>, Vec<u32>)> = candidates
            .into_iter()
            .map(|steps| {
                let prefix = LatticePath::from_steps(steps.clone()).prefix_norths();
                (steps, prefix)
            })
            .collect();
        for (q_steps, q_prefix) in &prefixed {
            for (p_steps, p_prefix) in &prefixed {
                if !accept_pair(p_prefix, q_prefix, filter) {
                    continue;
                }
                let d = Diagram::new(
                    LatticePath::from_steps(p_steps.clone()),
                    LatticePath::from_steps(q_steps.clone()),
                )
                .expect("enumerated pairs satisfy dominance");
                out.push(d);
            }
        }
    }
    out
}

fn accept_pair(p_prefix: &[u32], q_prefix: &[u32], filter: DiagramFilter) -> bool {
    let len = p_prefix.len() - 1;
    for k in 0..=len {
        if q_prefix[k] < p_prefix[k] {
            return false;
        }
    }
    match filter {
        DiagramFilter::All => true,
        DiagramFilter::Lc => {
            !(1..=len).any(|k| q_prefix[k - 1] == p_prefix[k - 1] && q_prefix[k] == p_prefix[k])
        }
        DiagramFilter::LcConnected => !(1..len).any(|k| q_prefix[k] == p_prefix[k]),
    }
}

/// True iff every connected component is the trivial snake (a single unit
/// square), the exact equality class of the multiplicative inequality.
pub fn is_trivial_snake_sum(d: &Diagram) -> bool {
    d.components()
        .iter()
        .all(|c| c.num_elements() == 2 && c.width() == 1 && c.is_connected())
}

/// The three Tutte evaluations entering the Merino-Welsh products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteEvals {
    pub t20: BigUint,
    pub t02: BigUint,
    pub bases: BigUint,
}

/// Evaluates `T(M; 2, 0)`, `T(M; 0, 2)` and `T(M; 1, 1)` for a diagram,
/// multiplying over connected components. Snake components use the closed
/// forms; anything else falls back to corank-nullity accumulation, with the
/// basis count always taken from the lattice-path DP. The cap applies per
/// component.
pub fn lpm_evaluations(d: &Diagram, cap: u32) -> Result<TutteEvals> {
    let mut t20 = BigUint::one();
    let mut t02 = BigUint::one();
    let mut bases = BigUint::one();
    for part in d.components() {
        if part.num_elements() == 1 {
            // A loop zeroes T(2,0); a coloop zeroes T(0,2); one basis each.
            if part.loops().len() == 1 {
                t20 *= BigUint::zero();
                t02 *= BigUint::from(2u32);
            } else {
                t20 *= BigUint::from(2u32);
                t02 *= BigUint::zero();
            }
            continue;
        }
        if let Some(rec) = recognize_snake(&part) {
            t20 *= rec.composition.eval20();
            t02 *= rec.composition.eval02();
            bases *= rec.composition.bases_recursive();
            continue;
        }
        let m = MinorMatroid::from_diagram(&part)?;
        let a = tutte::tutte_eval_subset_sum(&m, 2, 0, cap)?;
        let b = tutte::tutte_eval_subset_sum(&m, 0, 2, cap)?;
        t20 *= a.to_biguint().expect("T(2,0) is nonnegative");
        t02 *= b.to_biguint().expect("T(0,2) is nonnegative");
        bases *= tutte::count_bases(&part);
    }
    Ok(TutteEvals { t20, t02, bases })
}

/// One checked diagram: the three evaluations, the exact comparisons, and
/// the structural flags.
#[derive(Debug, Clone)]
pub struct MwReport {
    pub diagram: String,
    pub evals: TutteEvals,
    pub margin: MwMargin,
    pub is_connected: bool,
    pub is_snake: bool,
    pub is_trivial_snake_sum: bool,
}

impl MwReport {
    /// Stable single-line form for sweep report files.
    pub fn report_line(&self) -> String {
        format!(
            "{} t20={} t02={} bases={} connected={} snake={} trivial_sum={} mw={} mw_eq={} s43={} s43_eq={}",
            self.diagram,
            self.evals.t20,
            self.evals.t02,
            self.evals.bases,
            u8::from(self.is_connected),
            u8::from(self.is_snake),
            u8::from(self.is_trivial_snake_sum),
            u8::from(self.margin.satisfies_mw),
            u8::from(self.margin.equality_mw),
            u8::from(self.margin.satisfies_43),
            u8::from(self.margin.equality_43),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "diagram": self.diagram,
            "t20": self.evals.t20.to_string(),
            "t02": self.evals.t02.to_string(),
            "bases": self.evals.bases.to_string(),
            "lhs": self.margin.lhs.to_string(),
            "rhs": self.margin.rhs.to_string(),
            "satisfies_mw": self.margin.satisfies_mw,
            "equality_mw": self.margin.equality_mw,
            "satisfies_43": self.margin.satisfies_43,
            "equality_43": self.margin.equality_43,
            "is_connected": self.is_connected,
            "is_snake": self.is_snake,
            "is_trivial_snake_sum": self.is_trivial_snake_sum,
        })
    }
}

/// Checks the Merino-Welsh products for one loopless-coloopless diagram.
pub fn mw_check(d: &Diagram, cap: u32) -> Result<MwReport> {
    let loops = d.loops();
    if !loops.is_empty() {
        return Err(Error::LoopsPresent(loops));
    }
    let coloops = d.coloops();
    if !coloops.is_empty() {
        return Err(Error::ColoopsPresent(coloops));
    }
    let evals = lpm_evaluations(d, cap)?;
    let margin = MwMargin::from_evaluations(&evals.t20, &evals.t02, &evals.bases);
    Ok(MwReport {
        diagram: d.canonical(),
        margin,
        is_connected: d.is_connected(),
        is_snake: recognize_snake(d).is_some(),
        is_trivial_snake_sum: is_trivial_snake_sum(d),
        evals,
    })
}

/// An exact nonnegative rational, kept reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ratio {
    num: BigUint,
    den: BigUint,
}

impl Ratio {
    pub fn new(num: BigUint, den: BigUint) -> Ratio {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        Ratio { num: &num / &g, den: &den / &g }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub n_max: u32,
    pub workers: usize,
    pub cap: u32,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { n_max: 10, workers: 1, cap: tutte::DEFAULT_SUBSET_CAP }
    }
}

/// Aggregate outcome of a sweep over every LC diagram with at most `n_max`
/// elements.
#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub n_max: u32,
    pub total_checked: u64,
    pub per_n: Vec<(u32, u64)>,
    /// Diagrams violating the plain multiplicative inequality (expected none).
    pub mw_violations: Vec<String>,
    /// Non-trivial-snake-sum diagrams violating the 4/3 bound (expected none).
    pub violations_43: Vec<String>,
    /// Diagrams attaining plain-inequality equality.
    pub equality_cases: Vec<String>,
    /// Whether the equality cases are exactly the trivial snake sums.
    pub equality_exactly_trivial: bool,
    /// Minimum of `t20·t02 / bases²` over non-trivial-snake-sum diagrams.
    pub min_ratio: Option<Ratio>,
    pub min_ratio_witnesses: Vec<String>,
}

impl SweepSummary {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n_max": self.n_max,
            "total_checked": self.total_checked,
            "per_n": self.per_n,
            "mw_violations": self.mw_violations,
            "violations_43": self.violations_43,
            "equality_cases": self.equality_cases,
            "equality_exactly_trivial": self.equality_exactly_trivial,
            "min_ratio": self.min_ratio.as_ref().map(|r| r.to_string()),
            "min_ratio_witnesses": self.min_ratio_witnesses,
        })
    }

    /// The human-readable summary block of a report file.
    pub fn report_block(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# diagrams_checked: {}\n", self.total_checked));
        for (n, count) in &self.per_n {
            out.push_str(&format!("#   n={n}: {count}\n"));
        }
        out.push_str(&format!("# mw_violations: {}\n", self.mw_violations.len()));
        out.push_str(&format!("# strengthened_violations: {}\n", self.violations_43.len()));
        out.push_str(&format!(
            "# equality_cases: {} (exactly the trivial snake sums: {})\n",
            self.equality_cases.len(),
            self.equality_exactly_trivial
        ));
        match &self.min_ratio {
            Some(r) => {
                out.push_str(&format!(
                    "# min_ratio_nontrivial: {} attained by {} diagram(s), first: {}\n",
                    r,
                    self.min_ratio_witnesses.len(),
                    self.min_ratio_witnesses.first().map(String::as_str).unwrap_or("-")
                ));
            }
            None => out.push_str("# min_ratio_nontrivial: none (no non-trivial diagrams)\n"),
        }
        out
    }
}

/// Runs `mw_check` on every LC diagram with `1 ..= n_max` elements,
/// reporting each diagram through the callback in enumeration order.
/// Work is split across `workers` threads per rank block; the outcome is
/// identical for any worker count.
pub fn sweep_with<F>(opts: &SweepOptions, mut on_report: F) -> Result<SweepSummary>
where
    F: FnMut(&MwReport),
{
    let workers = opts.workers.max(1);
    let mut summary = SweepSummary {
        n_max: opts.n_max,
        total_checked: 0,
        per_n: Vec::new(),
        mw_violations: Vec::new(),
        violations_43: Vec::new(),
        equality_cases: Vec::new(),
        equality_exactly_trivial: true,
        min_ratio: None,
        min_ratio_witnesses: Vec::new(),
    };
    for n in 1..=opts.n_max {
        let diagrams = enumerate_diagrams(n, DiagramFilter::Lc);
        summary.per_n.push((n, diagrams.len() as u64));
        let chunk_size = diagrams.len().div_ceil(workers).max(1);
        let mut reports: Vec<Result<MwReport>> = Vec::with_capacity(diagrams.len());
        std::thread::scope(|scope| {
            let handles: Vec<_> = diagrams
                .chunks(chunk_size)
                .map(|chunk| {
                    scope.spawn(move || {
                        chunk
                            .iter()
                            .map(|d| mw_check(d, opts.cap))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for handle in handles {
                reports.extend(handle.join().expect("sweep worker panicked"));
            }
        });
        for report in reports {
            let report = report?;
            summary.total_checked += 1;
            if !report.margin.satisfies_mw {
                summary.mw_violations.push(report.diagram.clone());
            }
            if report.margin.equality_mw {
                summary.equality_cases.push(report.diagram.clone());
                if !report.is_trivial_snake_sum {
                    summary.equality_exactly_trivial = false;
                }
            } else if report.is_trivial_snake_sum {
                // A trivial snake sum failing equality would be a defect.
                summary.equality_exactly_trivial = false;
            }
            if !report.is_trivial_snake_sum {
                if !report.margin.satisfies_43 {
                    summary.violations_43.push(report.diagram.clone());
                }
                let ratio = Ratio::new(
                    report.margin.product.clone(),
                    report.margin.bases_squared.clone(),
                );
                match &summary.min_ratio {
                    Some(best) if ratio > *best => {}
                    Some(best) if ratio == *best => {
                        summary.min_ratio_witnesses.push(report.diagram.clone());
                    }
                    _ => {
                        summary.min_ratio = Some(ratio);
                        summary.min_ratio_witnesses = vec![report.diagram.clone()];
                    }
                }
            }
            on_report(&report);
        }
    }
    Ok(summary)
}

pub fn sweep(opts: &SweepOptions) -> Result<SweepSummary> {
    sweep_with(opts, |_| {})
}
