use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::matroid::MinorMatroid;
use crate::poly::BivariatePoly;

/// Default cap on ground-set size for the 2^n subset-sum evaluators.
pub const DEFAULT_SUBSET_CAP: u32 = 20;

/// The Tutte polynomial via the corank-nullity sum over all subsets:
/// each subset `A` contributes `(x-1)^{r(E)-r(A)} (y-1)^{|A|-r(A)}`.
///
/// The rank is recomputed from the oracle for every subset; subsets are
/// grouped into a (corank, nullity) table before the polynomial is expanded
/// to the x,y basis through cached binomial rows.
pub fn tutte_subset_sum(m: &MinorMatroid, cap: u32) -> Result<BivariatePoly> {
    let table = corank_nullity_table(m, cap)?;
    let rows = binomial_rows(table.len().max(table.first().map_or(1, |r| r.len())));
    let mut poly = BivariatePoly::zero();
    for (a, row) in table.iter().enumerate() {
        for (b, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let count = BigInt::from(count);
            // (x-1)^a (y-1)^b expanded term by term.
            for i in 0..=a {
                for j in 0..=b {
                    let mut c = &rows[a][i] * &rows[b][j] * &count;
                    if (a - i + b - j) % 2 == 1 {
                        c = -c;
                    }
                    poly.add_term(i as u32, j as u32, &c);
                }
            }
        }
    }
    Ok(poly)
}

/// Exact evaluation of the Tutte polynomial at an integer point by direct
/// corank-nullity accumulation, bypassing polynomial construction.
pub fn tutte_eval_subset_sum(m: &MinorMatroid, x: i64, y: i64, cap: u32) -> Result<BigInt> {
    let table = corank_nullity_table(m, cap)?;
    let max_a = table.len();
    let max_b = table.first().map_or(1, |r| r.len());
    let xp = int_powers(x - 1, max_a);
    let yp = int_powers(y - 1, max_b);
    let mut acc = BigInt::zero();
    for (a, row) in table.iter().enumerate() {
        for (b, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            acc += &xp[a] * &yp[b] * BigInt::from(count);
        }
    }
    Ok(acc)
}

/// Number of subsets per (corank, nullity) pair, by brute force.
fn corank_nullity_table(m: &MinorMatroid, cap: u32) -> Result<Vec<Vec<u64>>> {
    let ground = m.ground();
    let n = ground.len() as u32;
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    let bits: Vec<u64> = ground.iter().map(|&e| 1u64 << (e - 1)).collect();
    let r = m.rank_full();
    let mut table = vec![vec![0u64; n as usize + 1]; r as usize + 1];
    for sub in 0..(1u64 << n) {
        let mut mask = 0u64;
        let mut size = 0u32;
        let mut rest = sub;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            mask |= bits[i];
            size += 1;
        }
        let rk = m.rank_mask(mask);
        table[(r - rk) as usize][(size - rk) as usize] += 1;
    }
    Ok(table)
}

fn binomial_rows(max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max + 1);
    rows.push(vec![BigInt::one()]);
    for n in 1..=max {
        let prev = &rows[n - 1];
        let mut row = vec![BigInt::one()];
        for k in 1..n {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows
}

fn int_powers(base: i64, max: usize) -> Vec<BigInt> {
    let base = BigInt::from(base);
    let mut out = Vec::with_capacity(max + 1);
    out.push(BigInt::one());
    for _ in 0..max {
        let next = out.last().unwrap() * &base;
        out.push(next);
    }
    out
}

/// Number of bases of `M[P, Q]`: monotone lattice paths weakly between the
/// two paths, counted by dynamic programming over antidiagonals. Polynomial
/// in the diagram size, so it scales far past the subset-sum cap.
pub fn count_bases(d: &Diagram) -> BigUint {
    let np = d.lower().prefix_norths();
    let nq = d.upper().prefix_norths();
    let n = d.num_elements() as usize;
    // ways[y - np[k]] = number of partial paths reaching (k - y, y).
    let mut ways: Vec<BigUint> = vec![BigUint::one()];
    for k in 1..=n {
        let (lo, hi) = (np[k], nq[k]);
        let (plo, phi) = (np[k - 1], nq[k - 1]);
        let mut next = Vec::with_capacity((hi - lo + 1) as usize);
        for y in lo..=hi {
            let mut v = BigUint::zero();
            if y >= plo && y <= phi {
                v += &ways[(y - plo) as usize]; // East step
            }
            if y > 0 && y - 1 >= plo && y - 1 <= phi {
                v += &ways[(y - 1 - plo) as usize]; // North step
            }
            next.push(v);
        }
        ways = next;
    }
    ways.pop().unwrap_or_else(BigUint::one)
}

/// The Tutte polynomial of a diagram: factor over connected components,
/// with each loop contributing `y`, each coloop `x`, and every nontrivial
/// component evaluated by the subset sum. The cap applies per component.
pub fn tutte_lpm(d: &Diagram, cap: u32) -> Result<BivariatePoly> {
    let mut product = BivariatePoly::one();
    for part in d.components() {
        let factor = if part.num_elements() == 1 {
            if part.loops().len() == 1 {
                BivariatePoly::y()
            } else {
                BivariatePoly::x()
            }
        } else {
            tutte_subset_sum(&MinorMatroid::from_diagram(&part)?, cap)?
        };
        product = &product * &factor;
    }
    Ok(product)
}

/// Checks `T(M) = T(M\e) + T(M/e)` for an element that is neither a loop
/// nor a coloop; those cases are reported as distinct errors since a
/// different identity (a plain factor) applies.
pub fn check_deletion_contraction(m: &MinorMatroid, e: u32, cap: u32) -> Result<bool> {
    if m.is_loop(e)? {
        return Err(Error::LoopElement { element: e });
    }
    if m.is_coloop(e)? {
        return Err(Error::ColoopElement { element: e });
    }
    let whole = tutte_subset_sum(m, cap)?;
    let deleted = tutte_subset_sum(&m.delete(e)?, cap)?;
    let contracted = tutte_subset_sum(&m.contract(e)?, cap)?;
    Ok(whole == &deleted + &contracted)
}

/// Checks the duality identity `T(M; x, y) = T(M*; y, x)`.
pub fn check_duality(d: &Diagram, cap: u32) -> Result<bool> {
    let primal = tutte_lpm(d, cap)?;
    let dual = tutte_lpm(&d.dual(), cap)?;
    Ok(primal.swap_vars() == dual)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_of(text: &str) -> BivariatePoly {
        let d = Diagram::parse(text).unwrap();
        tutte_subset_sum(&MinorMatroid::from_diagram(&d).unwrap(), DEFAULT_SUBSET_CAP).unwrap()
    }

    #[test]
    fn tutte_of_u13() {
        assert_eq!(poly_of("P:EEN;Q:NEE").to_string(), "x + y + y^2");
    }

    #[test]
    fn tutte_of_parallel_pair() {
        assert_eq!(poly_of("P:EN;Q:NE").to_string(), "x + y");
    }

    #[test]
    fn tutte_base_cases() {
        assert_eq!(poly_of("P:E;Q:E").to_string(), "y");
        assert_eq!(poly_of("P:N;Q:N").to_string(), "x");
    }

    #[test]
    fn tutte_of_u24() {
        assert_eq!(poly_of("P:EENN;Q:NNEE").to_string(), "x^2 + 2 x + 2 y + y^2");
    }

    #[test]
    fn snake_2_3_full_polynomial() {
        let p = poly_of("P:EENNN;Q:NENNE");
        let expected: Vec<(u32, u32, String)> = [(0, 1), (0, 2), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0)]
            .iter()
            .map(|&(i, j)| (i, j, "1".to_string()))
            .collect();
        assert_eq!(p.to_triples(), expected);
        assert_eq!(p.max_degrees(), (3, 2));
        assert_eq!(p.eval(1, 1), BigInt::from(7));
        assert_eq!(p.eval(2, 0), BigInt::from(14));
        assert_eq!(p.eval(0, 2), BigInt::from(6));
        assert!(p.all_coefficients_nonnegative());
    }

    #[test]
    fn point_evaluation_bypass_agrees_with_polynomial() {
        for text in ["P:EENNN;Q:NENNE", "P:EENN;Q:NNEE", "P:ENE;Q:NEE"] {
            let d = Diagram::parse(text).unwrap();
            let m = MinorMatroid::from_diagram(&d).unwrap();
            let p = tutte_subset_sum(&m, 20).unwrap();
            for (x, y) in [(2, 0), (0, 2), (1, 1), (-1, 3)] {
                assert_eq!(tutte_eval_subset_sum(&m, x, y, 20).unwrap(), p.eval(x, y));
            }
        }
    }

    #[test]
    fn count_bases_examples() {
        assert_eq!(count_bases(&Diagram::uniform(2, 2).unwrap()), BigUint::from(6u32));
        assert_eq!(count_bases(&Diagram::parse("P:EENNN;Q:NENNE").unwrap()), BigUint::from(7u32));
        for a in 1u32..=6 {
            let strip = Diagram::uniform(1, a).unwrap();
            assert_eq!(count_bases(&strip), BigUint::from(a + 1));
        }
        // Fully shared paths admit exactly one lattice path.
        assert_eq!(count_bases(&Diagram::parse("P:ENE;Q:ENE").unwrap()), BigUint::one());
    }

    #[test]
    fn count_bases_matches_binomial_for_uniform() {
        assert_eq!(
            count_bases(&Diagram::uniform(3, 3).unwrap()),
            num_integer::binomial(BigUint::from(6u32), BigUint::from(3u32))
        );
    }

    #[test]
    fn tutte_lpm_multiplies_components() {
        let s1 = Diagram::parse("P:EN;Q:NE").unwrap();
        let sum = Diagram::direct_sum(&[s1.clone(), s1]).unwrap();
        let squared = tutte_lpm(&sum, 20).unwrap();
        let xy = &BivariatePoly::x() + &BivariatePoly::y();
        assert_eq!(squared, &xy * &xy);

        let loop_coloop = Diagram::parse("P:EN;Q:EN").unwrap();
        assert_eq!(
            tutte_lpm(&loop_coloop, 20).unwrap(),
            &BivariatePoly::x() * &BivariatePoly::y()
        );
    }

    #[test]
    fn cap_is_enforced() {
        let d = Diagram::uniform(3, 3).unwrap();
        let m = MinorMatroid::from_diagram(&d).unwrap();
        let err = tutte_subset_sum(&m, 5).unwrap_err();
        assert_eq!(err, Error::CapExceeded { size: 6, cap: 5 });
    }

    #[test]
    fn deletion_contraction_identity_at_interior_element() {
        let m = MinorMatroid::from_diagram(&Diagram::uniform(2, 2).unwrap()).unwrap();
        assert!(check_deletion_contraction(&m, 3, 20).unwrap());
        let t = tutte_subset_sum(&m, 20).unwrap();
        let td = tutte_subset_sum(&m.delete(3).unwrap(), 20).unwrap();
        let tc = tutte_subset_sum(&m.contract(3).unwrap(), 20).unwrap();
        assert_eq!(t.eval(1, 1), BigInt::from(6));
        assert_eq!(td.eval(1, 1), BigInt::from(3));
        assert_eq!(tc.eval(1, 1), BigInt::from(3));
    }

    #[test]
    fn deletion_contraction_rejects_loops_and_coloops() {
        let d = Diagram::parse("P:ENE;Q:NEE").unwrap();
        let m = MinorMatroid::from_diagram(&d).unwrap();
        assert_eq!(
            check_deletion_contraction(&m, 3, 20).unwrap_err(),
            Error::LoopElement { element: 3 }
        );
        let d = Diagram::parse("P:EN;Q:EN").unwrap();
        let m = MinorMatroid::from_diagram(&d).unwrap();
        assert_eq!(
            check_deletion_contraction(&m, 2, 20).unwrap_err(),
            Error::ColoopElement { element: 2 }
        );
    }

    #[test]
    fn duality_identity_on_small_diagrams() {
        for text in ["P:EENN;Q:NNEE", "P:EEN;Q:NEE", "P:EENNN;Q:NENNE", "P:ENEN;Q:NENE"] {
            assert!(check_duality(&Diagram::parse(text).unwrap(), 20).unwrap(), "{text}");
        }
    }
}
