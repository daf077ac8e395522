use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// A minor of a lattice path matroid, represented by a rank oracle.
///
/// Minors carry the originating diagram plus the sets of deleted and
/// contracted elements; rank queries are answered through the parent diagram
/// by the composition rule `rank(X) = r(X ∪ C) − r(C)` where `C` is the
/// contracted set. Deletion leaves ranks of remaining subsets unchanged.
///
/// Element labels are the parent diagram's 1-based positions, so they stay
/// stable across taking minors. Bitmasks use bit `i-1` for element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorMatroid {
    base: Diagram,
    contracted: u64,
    deleted: u64,
    contracted_rank: u32,
}

impl MinorMatroid {
    /// Wraps a whole diagram (nothing deleted or contracted). Diagrams with
    /// more than 64 elements cannot be queried through bitmask oracles.
    pub fn from_diagram(d: &Diagram) -> Result<Self> {
        if d.num_elements() > 64 {
            return Err(Error::CapExceeded { size: d.num_elements(), cap: 64 });
        }
        Ok(MinorMatroid {
            base: d.clone(),
            contracted: 0,
            deleted: 0,
            contracted_rank: 0,
        })
    }

    pub fn parent(&self) -> &Diagram {
        &self.base
    }

    pub fn contracted_elements(&self) -> Vec<u32> {
        mask_elements(self.contracted)
    }

    pub fn deleted_elements(&self) -> Vec<u32> {
        mask_elements(self.deleted)
    }

    /// Remaining element labels, ascending.
    pub fn ground(&self) -> Vec<u32> {
        mask_elements(self.ground_mask())
    }

    pub fn ground_mask(&self) -> u64 {
        let all = full_mask(self.base.num_elements());
        all & !self.contracted & !self.deleted
    }

    pub fn num_elements(&self) -> u32 {
        self.ground_mask().count_ones()
    }

    pub fn contains(&self, e: u32) -> bool {
        e >= 1 && e <= self.base.num_elements() && self.ground_mask() >> (e - 1) & 1 == 1
    }

    /// Rank of a subset given as a bitmask over the remaining elements.
    pub fn rank_mask(&self, mask: u64) -> u32 {
        debug_assert_eq!(mask & !self.ground_mask(), 0);
        self.base.rank_mask(mask | self.contracted) - self.contracted_rank
    }

    /// Rank of a subset of the ground set.
    pub fn rank(&self, subset: &[u32]) -> Result<u32> {
        let mut mask = 0u64;
        for &e in subset {
            if !self.contains(e) {
                return Err(Error::UnknownElement { element: e });
            }
            mask |= 1 << (e - 1);
        }
        Ok(self.rank_mask(mask))
    }

    pub fn rank_full(&self) -> u32 {
        self.rank_mask(self.ground_mask())
    }

    pub fn is_loop(&self, e: u32) -> Result<bool> {
        Ok(self.rank(&[e])? == 0)
    }

    pub fn is_coloop(&self, e: u32) -> Result<bool> {
        if !self.contains(e) {
            return Err(Error::UnknownElement { element: e });
        }
        let without = self.ground_mask() & !(1 << (e - 1));
        Ok(self.rank_mask(without) < self.rank_full())
    }

    pub fn delete(&self, e: u32) -> Result<Self> {
        if !self.contains(e) {
            return Err(Error::UnknownElement { element: e });
        }
        Ok(MinorMatroid {
            base: self.base.clone(),
            contracted: self.contracted,
            deleted: self.deleted | 1 << (e - 1),
            contracted_rank: self.contracted_rank,
        })
    }

    pub fn contract(&self, e: u32) -> Result<Self> {
        if !self.contains(e) {
            return Err(Error::UnknownElement { element: e });
        }
        let contracted = self.contracted | 1 << (e - 1);
        Ok(MinorMatroid {
            base: self.base.clone(),
            contracted,
            deleted: self.deleted,
            contracted_rank: self.base.rank_mask(contracted),
        })
    }

    /// Connectivity via the separator test: the matroid is disconnected iff
    /// some proper nonempty subset `X` satisfies
    /// `rank(X) + rank(E \ X) = rank(E)`. Exponential in the ground set size.
    pub fn is_connected(&self) -> bool {
        let ground: Vec<u32> = self.ground();
        let n = ground.len();
        if n <= 1 {
            return true;
        }
        let full = self.ground_mask();
        let r = self.rank_full();
        // Fix ground[0] in X to halve the enumeration.
        let first = 1u64 << (ground[0] - 1);
        for sub in 0..(1u64 << (n - 1)) {
            let mut x = first;
            for (i, &e) in ground[1..].iter().enumerate() {
                if sub >> i & 1 == 1 {
                    x |= 1 << (e - 1);
                }
            }
            if x == full {
                continue;
            }
            if self.rank_mask(x) + self.rank_mask(full & !x) == r {
                return false;
            }
        }
        true
    }
}

fn full_mask(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_elements(mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() + 1);
        rest &= rest - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u24() -> MinorMatroid {
        MinorMatroid::from_diagram(&Diagram::uniform(2, 2).unwrap()).unwrap()
    }

    /// Number of subsets of full rank and size equal to the rank.
    fn count_bases(m: &MinorMatroid) -> u32 {
        let ground = m.ground();
        let r = m.rank_full();
        let mut count = 0;
        for sub in 0u64..1 << ground.len() {
            let mask: u64 = ground
                .iter()
                .enumerate()
                .filter(|(i, _)| sub >> i & 1 == 1)
                .map(|(_, &e)| 1 << (e - 1))
                .sum();
            if mask.count_ones() == r && m.rank_mask(mask) == r {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn delete_keeps_rank_contract_drops_it() {
        let m = u24();
        let del = m.delete(3).unwrap();
        assert_eq!(del.ground(), vec![1, 2, 4]);
        assert_eq!(del.rank_full(), 2);
        assert_eq!(count_bases(&del), 3);

        let con = m.contract(3).unwrap();
        assert_eq!(con.ground(), vec![1, 2, 4]);
        assert_eq!(con.rank_full(), 1);
        assert_eq!(count_bases(&con), 3);
    }

    #[test]
    fn unknown_elements_are_rejected() {
        let m = u24();
        assert!(m.delete(5).is_err());
        assert!(m.contract(0).is_err());
        assert!(m.delete(3).unwrap().delete(3).is_err());
        assert!(m.rank(&[3, 9]).is_err());
    }

    #[test]
    fn loop_contraction_equals_loop_deletion() {
        // P=ENE, Q=NEE has a loop at 3.
        let d = Diagram::parse("P:ENE;Q:NEE").unwrap();
        let m = MinorMatroid::from_diagram(&d).unwrap();
        assert!(m.is_loop(3).unwrap());
        let del = m.delete(3).unwrap();
        let con = m.contract(3).unwrap();
        for mask in 0u64..4 {
            assert_eq!(del.rank_mask(mask), con.rank_mask(mask));
        }
    }

    #[test]
    fn delete_contract_disjoint_elements_commute() {
        let m = MinorMatroid::from_diagram(&Diagram::uniform(2, 3).unwrap()).unwrap();
        let a = m.delete(1).unwrap().contract(4).unwrap();
        let b = m.contract(4).unwrap().delete(1).unwrap();
        assert_eq!(a.ground(), b.ground());
        for sub in 0u64..1 << 3 {
            let ground = a.ground();
            let mask: u64 = ground
                .iter()
                .enumerate()
                .filter(|(i, _)| sub >> i & 1 == 1)
                .map(|(_, &e)| 1 << (e - 1))
                .sum();
            assert_eq!(a.rank_mask(mask), b.rank_mask(mask));
        }
    }

    #[test]
    fn rank_axioms_hold_exhaustively() {
        for d in [
            Diagram::uniform(2, 2).unwrap(),
            Diagram::parse("P:EENNN;Q:NENNE").unwrap(),
            Diagram::parse("P:ENE;Q:NEE").unwrap(),
            Diagram::catalan(3).unwrap(),
        ] {
            let m = MinorMatroid::from_diagram(&d).unwrap();
            let n = m.num_elements();
            let full = m.ground_mask();
            assert_eq!(m.rank_mask(0), 0);
            for x in 0u64..=full {
                if x & !full != 0 {
                    continue;
                }
                let rx = m.rank_mask(x);
                // Unit increase.
                for e in 0..n {
                    let bit = 1u64 << e;
                    if x & bit == 0 {
                        let step = m.rank_mask(x | bit) - rx;
                        assert!(step <= 1);
                    }
                }
                // Submodularity over all pairs.
                for y in 0u64..=full {
                    if y & !full != 0 {
                        continue;
                    }
                    let ry = m.rank_mask(y);
                    assert!(
                        m.rank_mask(x | y) + m.rank_mask(x & y) <= rx + ry,
                        "submodularity failed for {d}"
                    );
                }
            }
        }
    }

    #[test]
    fn connectivity_matches_diagram_criterion() {
        for (text, expected) in [
            ("P:EENN;Q:NNEE", true),
            ("P:ENEN;Q:NENE", false),
            ("P:EENNN;Q:NENNE", true),
            ("P:ENE;Q:NEE", false), // has a loop
        ] {
            let d = Diagram::parse(text).unwrap();
            let m = MinorMatroid::from_diagram(&d).unwrap();
            assert_eq!(m.is_connected(), expected, "{text}");
            assert_eq!(d.is_connected(), expected, "{text}");
        }
        // Single elements are connected by convention.
        let single = Diagram::parse("P:E;Q:E").unwrap();
        assert!(MinorMatroid::from_diagram(&single).unwrap().is_connected());
    }
}
