use std::fmt;

use crate::error::{Error, Result};
use crate::path::{LatticePath, Step};

/// The diagram of a lattice path matroid `M[P, Q]`: a lower path `P` and an
/// upper path `Q` with the same endpoint, `Q` weakly above `P`.
///
/// Elements are the 1-based step indices `1..=m+r`. With `P`'s North steps at
/// positions `s_1 < … < s_r` and `Q`'s at `t_1 < … < t_r`, the matroid is the
/// transversal matroid of the intervals `A_i = [t_i, s_i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    lower: LatticePath,
    upper: LatticePath,
}

impl Diagram {
    /// Validates endpoints and dominance. The dominance check reports the
    /// first interval index `i` with `t_i > s_i`.
    pub fn new(lower: LatticePath, upper: LatticePath) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::EmptyInput("diagram paths must be nonempty"));
        }
        if lower.east_count() != upper.east_count()
            || lower.north_count() != upper.north_count()
        {
            return Err(Error::EndpointMismatch(
                lower.east_count(),
                lower.north_count(),
                upper.east_count(),
                upper.north_count(),
            ));
        }
        let s = lower.north_positions();
        let t = upper.north_positions();
        for (i, (ti, si)) in t.iter().zip(&s).enumerate() {
            if ti > si {
                return Err(Error::Dominance { index: i + 1 });
            }
        }
        Ok(Diagram { lower, upper })
    }

    /// Parses the canonical text form `"P:EENNN;Q:NENNE"`. Whitespace- and
    /// case-insensitive.
    pub fn parse(text: &str) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let upper_text = cleaned.to_ascii_uppercase();
        let rest = upper_text.strip_prefix("P:").ok_or_else(|| Error::Parse {
            position: 1,
            message: "expected diagram text to start with 'P:'".into(),
        })?;
        let (p_word, q_part) = rest.split_once(';').ok_or_else(|| Error::Parse {
            position: upper_text.len(),
            message: "expected ';' separating the P and Q words".into(),
        })?;
        let q_word = q_part.strip_prefix("Q:").ok_or_else(|| Error::Parse {
            position: p_word.len() + 4,
            message: "expected 'Q:' after ';'".into(),
        })?;
        Diagram::new(LatticePath::parse(p_word)?, LatticePath::parse(q_word)?)
    }

    /// Canonical text form, `"P:<word>;Q:<word>"`.
    pub fn canonical(&self) -> String {
        format!("P:{};Q:{}", self.lower.word(), self.upper.word())
    }

    /// The uniform matroid `U_{r, r+n}`: every `r`-subset of `r + n` elements
    /// is a basis.
    pub fn uniform(rank: u32, corank: u32) -> Result<Self> {
        let mut p = vec![Step::East; corank as usize];
        p.extend(vec![Step::North; rank as usize]);
        let mut q = vec![Step::North; rank as usize];
        q.extend(vec![Step::East; corank as usize]);
        Diagram::new(LatticePath::from_steps(p), LatticePath::from_steps(q))
    }

    /// The k-Catalan matroid: upper path `(NE)^k`, lower path `E^k N^k`.
    pub fn catalan(k: u32) -> Result<Self> {
        let mut q = Vec::with_capacity(2 * k as usize);
        for _ in 0..k {
            q.push(Step::North);
            q.push(Step::East);
        }
        let mut p = vec![Step::East; k as usize];
        p.extend(vec![Step::North; k as usize]);
        Diagram::new(LatticePath::from_steps(p), LatticePath::from_steps(q))
    }

    pub fn lower(&self) -> &LatticePath {
        &self.lower
    }

    pub fn upper(&self) -> &LatticePath {
        &self.upper
    }

    /// Ground set size `m + r`.
    pub fn num_elements(&self) -> u32 {
        self.lower.len()
    }

    /// Endpoint x coordinate `m`.
    pub fn width(&self) -> u32 {
        self.lower.east_count()
    }

    /// Endpoint y coordinate `r`; equals the rank of the matroid.
    pub fn height(&self) -> u32 {
        self.lower.north_count()
    }

    /// The transversal presentation `(A_1, …, A_r)` with `A_i = [t_i, s_i]`.
    pub fn presentation(&self) -> Vec<(u32, u32)> {
        self.upper
            .north_positions()
            .into_iter()
            .zip(self.lower.north_positions())
            .collect()
    }

    /// Rank of a subset of the ground set: the size of a maximum partial
    /// transversal, computed by the greedy scan (each element, ascending,
    /// goes to the lowest-index unused interval containing it).
    pub fn rank(&self, subset: &[u32]) -> Result<u32> {
        let n = self.num_elements();
        let mut elems: Vec<u32> = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        for &e in &elems {
            if e == 0 || e > n {
                return Err(Error::UnknownElement { element: e });
            }
        }
        Ok(self.rank_sorted(&elems))
    }

    fn rank_sorted(&self, elems: &[u32]) -> u32 {
        let ivs = self.presentation();
        let mut ptr = 0usize;
        let mut count = 0u32;
        for &e in elems {
            while ptr < ivs.len() && ivs[ptr].1 < e {
                ptr += 1;
            }
            if ptr < ivs.len() && ivs[ptr].0 <= e {
                count += 1;
                ptr += 1;
            }
        }
        count
    }

    /// Rank of the subset encoded as a bitmask (bit `i-1` for element `i`).
    /// Only usable for diagrams with at most 64 elements.
    pub fn rank_mask(&self, mask: u64) -> u32 {
        debug_assert!(self.num_elements() <= 64);
        let ivs = self.presentation();
        let mut ptr = 0usize;
        let mut count = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros() + 1;
            rest &= rest - 1;
            while ptr < ivs.len() && ivs[ptr].1 < e {
                ptr += 1;
            }
            if ptr >= ivs.len() {
                break;
            }
            if ivs[ptr].0 <= e {
                count += 1;
                ptr += 1;
            }
        }
        count
    }

    /// The diagram of the dual matroid: the reflection along `x = y`, which
    /// swaps the roles of the two paths.
    pub fn dual(&self) -> Diagram {
        Diagram {
            lower: self.upper.reflect(),
            upper: self.lower.reflect(),
        }
    }

    /// Steps where `P` and `Q` traverse the same horizontal edge.
    pub fn loops(&self) -> Vec<u32> {
        self.shared_steps(Step::East)
    }

    /// Steps where `P` and `Q` traverse the same vertical edge.
    pub fn coloops(&self) -> Vec<u32> {
        self.shared_steps(Step::North)
    }

    fn shared_steps(&self, kind: Step) -> Vec<u32> {
        let np = self.lower.prefix_norths();
        let nq = self.upper.prefix_norths();
        self.lower
            .steps()
            .iter()
            .zip(self.upper.steps())
            .enumerate()
            .filter(|(k, (a, b))| {
                **a == kind && **b == kind && np[*k] == nq[*k] && np[*k + 1] == nq[*k + 1]
            })
            .map(|(k, _)| k as u32 + 1)
            .collect()
    }

    /// Loopless and coloopless: the paths share no edge.
    pub fn is_lc(&self) -> bool {
        let np = self.lower.prefix_norths();
        let nq = self.upper.prefix_norths();
        !(0..self.num_elements() as usize)
            .any(|k| np[k] == nq[k] && np[k + 1] == nq[k + 1])
    }

    /// Interior step counts `0 < k < m+r` at which the paths meet.
    pub(crate) fn meeting_points(&self) -> Vec<usize> {
        let np = self.lower.prefix_norths();
        let nq = self.upper.prefix_norths();
        (1..self.num_elements() as usize)
            .filter(|&k| np[k] == nq[k])
            .collect()
    }

    /// Connected in the matroid sense: the paths meet only at the corners.
    pub fn is_connected(&self) -> bool {
        self.meeting_points().is_empty()
    }

    /// Splits the diagram at every interior meeting point of the paths; each
    /// part is translated back to the origin. Concatenating the parts with
    /// `direct_sum` reproduces the diagram.
    pub fn components(&self) -> Vec<Diagram> {
        let mut cuts = vec![0usize];
        cuts.extend(self.meeting_points());
        cuts.push(self.num_elements() as usize);
        cuts.windows(2)
            .map(|w| Diagram {
                lower: LatticePath::from_steps(self.lower.steps()[w[0]..w[1]].to_vec()),
                upper: LatticePath::from_steps(self.upper.steps()[w[0]..w[1]].to_vec()),
            })
            .collect()
    }

    /// Concatenates diagrams corner to corner.
    pub fn direct_sum(parts: &[Diagram]) -> Result<Diagram> {
        if parts.is_empty() {
            return Err(Error::EmptyInput("direct_sum needs at least one part"));
        }
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for d in parts {
            lower.extend_from_slice(d.lower.steps());
            upper.extend_from_slice(d.upper.steps());
        }
        Diagram::new(
            LatticePath::from_steps(lower),
            LatticePath::from_steps(upper),
        )
    }

    /// Lattice points strictly between the two paths, in antidiagonal order.
    pub fn interior_points(&self) -> Vec<(u32, u32)> {
        let np = self.lower.prefix_norths();
        let nq = self.upper.prefix_norths();
        let mut pts = Vec::new();
        for k in 1..self.num_elements() {
            for y in np[k as usize] + 1..nq[k as usize] {
                pts.push((k - y, y));
            }
        }
        pts
    }

    /// The splitting element of a connected non-snake diagram: with `(x, y)`
    /// the highest then rightmost interior lattice point, the element is
    /// `e = x + y + 1`. Deleting and contracting `e` both preserve
    /// connectivity.
    pub fn pivot_element(&self) -> Result<u32> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let pts = self.interior_points();
        let best = pts
            .iter()
            .max_by_key(|&&(x, y)| (y, x))
            .ok_or(Error::NoInteriorPoint)?;
        Ok(best.0 + best.1 + 1)
    }

    /// For each column `x` of the region, the half-open row range of its
    /// cells. A column crossed by a shared horizontal edge has an empty range.
    pub(crate) fn column_cells(&self) -> Vec<std::ops::Range<u32>> {
        let np = self.lower.prefix_norths();
        let nq = self.upper.prefix_norths();
        let lows = self
            .lower
            .steps()
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::East)
            .map(|(k, _)| np[k]);
        let highs = self
            .upper
            .steps()
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::East)
            .map(|(k, _)| nq[k]);
        lows.zip(highs).map(|(lo, hi)| lo..hi).collect()
    }

    /// Builds a diagram from per-column cell row ranges and a total height.
    /// Ranges must be monotone (both endpoints nondecreasing).
    pub(crate) fn from_column_cells(
        columns: &[std::ops::Range<u32>],
        height: u32,
    ) -> Result<Diagram> {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut py = 0;
        let mut qy = 0;
        for c in columns {
            assert!(c.start >= py && c.end >= qy && c.end <= height, "non-monotone columns");
            lower.extend(vec![Step::North; (c.start - py) as usize]);
            lower.push(Step::East);
            py = c.start;
            upper.extend(vec![Step::North; (c.end - qy) as usize]);
            upper.push(Step::East);
            qy = c.end;
        }
        lower.extend(vec![Step::North; (height - py) as usize]);
        upper.extend(vec![Step::North; (height - qy) as usize]);
        Diagram::new(
            LatticePath::from_steps(lower),
            LatticePath::from_steps(upper),
        )
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(p: &str, q: &str) -> Diagram {
        Diagram::new(LatticePath::parse(p).unwrap(), LatticePath::parse(q).unwrap()).unwrap()
    }

    #[test]
    fn uniform_2_4_is_valid() {
        let u = d("EENN", "NNEE");
        assert_eq!(u, Diagram::uniform(2, 2).unwrap());
        assert_eq!(u.presentation(), vec![(1, 3), (2, 4)]);
    }

    #[test]
    fn snake_2_3_words_are_valid() {
        let s = d("EENNN", "NENNE");
        assert_eq!(s.presentation(), vec![(1, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn swapped_paths_violate_dominance_at_first_index() {
        let err = Diagram::new(
            LatticePath::parse("NNEE").unwrap(),
            LatticePath::parse("EENN").unwrap(),
        )
        .unwrap_err();
        assert_eq!(err, Error::Dominance { index: 1 });
    }

    #[test]
    fn endpoint_mismatch_is_rejected() {
        let err = Diagram::new(
            LatticePath::parse("EEN").unwrap(),
            LatticePath::parse("NNE").unwrap(),
        )
        .unwrap_err();
        assert_eq!(err.code(), "endpoint_mismatch");
    }

    #[test]
    fn parse_accepts_whitespace_and_case() {
        let a = Diagram::parse("P:EENNN;Q:NENNE").unwrap();
        let b = Diagram::parse("  p: eennn ; q: nenne ").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonical(), "P:EENNN;Q:NENNE");
    }

    #[test]
    fn uniform_presentation_for_u_1_3() {
        let u = Diagram::uniform(1, 2).unwrap();
        assert_eq!(u.canonical(), "P:EEN;Q:NEE");
        assert_eq!(u.presentation(), vec![(1, 3)]);
    }

    #[test]
    fn rank_of_uniform_subsets() {
        let u = Diagram::uniform(2, 2).unwrap();
        assert_eq!(u.rank(&[1, 2]).unwrap(), 2);
        assert_eq!(u.rank(&[]).unwrap(), 0);
        assert_eq!(u.rank(&(1..=4).collect::<Vec<_>>()).unwrap(), 2);
    }

    #[test]
    fn rank_of_snake_subset_collapses() {
        // Both 1 and 2 lie only in A_1 = [1,3].
        let s = d("EENNN", "NENNE");
        assert_eq!(s.rank(&[1, 2]).unwrap(), 1);
    }

    #[test]
    fn rank_rejects_foreign_elements() {
        let u = Diagram::uniform(2, 2).unwrap();
        assert_eq!(u.rank(&[5]).unwrap_err(), Error::UnknownElement { element: 5 });
    }

    #[test]
    fn rank_mask_agrees_with_slice_rank() {
        let s = d("EENNN", "NENNE");
        for mask in 0u64..32 {
            let subset: Vec<u32> = (1..=5).filter(|e| mask >> (e - 1) & 1 == 1).collect();
            assert_eq!(s.rank_mask(mask), s.rank(&subset).unwrap());
        }
    }

    #[test]
    fn dual_of_uniform_is_itself() {
        let u = Diagram::uniform(2, 2).unwrap();
        assert_eq!(u.dual(), u);
    }

    #[test]
    fn dual_of_s2_is_s12() {
        // S(2) = (EEN, NEE); its dual is the vertical domino S(1,2).
        let s2 = d("EEN", "NEE");
        assert_eq!(s2.dual(), d("ENN", "NNE"));
        assert_eq!(s2.dual().dual(), s2);
    }

    #[test]
    fn shared_edges_are_loops_and_coloops() {
        let both = d("EN", "EN");
        assert_eq!(both.loops(), vec![1]);
        assert_eq!(both.coloops(), vec![2]);
        assert!(!both.is_lc());

        let u = Diagram::uniform(2, 2).unwrap();
        assert!(u.loops().is_empty());
        assert!(u.coloops().is_empty());
        assert!(u.is_lc());

        let g = d("ENE", "NEE");
        assert_eq!(g.loops(), vec![3]);
        assert!(g.coloops().is_empty());
        assert_eq!(g.rank(&[3]).unwrap(), 0);
    }

    #[test]
    fn components_split_at_meeting_points() {
        let u = Diagram::uniform(2, 2).unwrap();
        assert_eq!(u.components(), vec![u.clone()]);
        assert!(u.is_connected());

        let two = d("ENEN", "NENE");
        assert!(!two.is_connected());
        let parts = two.components();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p == &d("EN", "NE")));
        assert!(parts.iter().all(|p| p.is_connected()));

        let single_loop = d("E", "E");
        assert_eq!(single_loop.components().len(), 1);
    }

    #[test]
    fn direct_sum_concatenates_corner_to_corner() {
        let s1 = d("EN", "NE");
        assert_eq!(Diagram::direct_sum(&[s1.clone()]).unwrap(), s1);
        assert_eq!(
            Diagram::direct_sum(&[s1.clone(), s1.clone()]).unwrap(),
            d("ENEN", "NENE")
        );
        let u12 = Diagram::uniform(1, 1).unwrap();
        let triple = Diagram::direct_sum(&[u12.clone(), u12.clone(), u12]).unwrap();
        assert_eq!(triple.num_elements(), 6);
        assert_eq!(triple.components().len(), 3);
        assert!(Diagram::direct_sum(&[]).is_err());
    }

    #[test]
    fn interior_points_and_pivot() {
        let u = Diagram::uniform(2, 2).unwrap();
        assert_eq!(u.interior_points(), vec![(1, 1)]);
        assert_eq!(u.pivot_element().unwrap(), 3);

        let s = d("EENNN", "NENNE");
        assert!(s.interior_points().is_empty());
        assert_eq!(s.pivot_element().unwrap_err(), Error::NoInteriorPoint);

        let u25 = d("EEENN", "NNEEE");
        assert_eq!(u25.interior_points(), vec![(1, 1), (2, 1)]);
        assert_eq!(u25.pivot_element().unwrap(), 4);

        let disconnected = d("ENEN", "NENE");
        assert_eq!(disconnected.pivot_element().unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn rank_of_ground_is_height_and_dual_rank_is_width() {
        for diagram in [d("EENNN", "NENNE"), Diagram::uniform(2, 3).unwrap()] {
            let ground: Vec<u32> = (1..=diagram.num_elements()).collect();
            assert_eq!(diagram.rank(&ground).unwrap(), diagram.height());
            assert_eq!(diagram.dual().rank(&ground).unwrap(), diagram.width());
        }
    }

    #[test]
    fn column_ranges_round_trip() {
        for diagram in [
            d("EENNN", "NENNE"),
            Diagram::uniform(2, 2).unwrap(),
            Diagram::catalan(3).unwrap(),
            d("ENEN", "NNEE"),
            d("ENE", "NEE"),
        ] {
            let back = Diagram::from_column_cells(&diagram.column_cells(), diagram.height())
                .unwrap();
            assert_eq!(back, diagram);
        }
    }

    #[test]
    fn catalan_diagram_words() {
        let c = Diagram::catalan(2).unwrap();
        assert_eq!(c.canonical(), "P:EENN;Q:NENE");
    }
}
