use std::collections::HashMap;

use crate::geometry::NormalizedTriangle;

/// Default Euclidean merge radius for orbit points.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const NIL: u32 = u32::MAX;

/// Normalized triangles deduplicated under a Euclidean tolerance.
///
/// Backed by a uniform grid with cell size equal to the tolerance; an
/// insert probes the 3×3 block of cells around the new point. Cells hold
/// intrusive linked lists threaded through `next`.
#[derive(Debug, Clone)]
pub struct OrbitSet {
    points: Vec<NormalizedTriangle>,
    tolerance: f64,
    heads: HashMap<(i64, i64), u32>,
    next: Vec<u32>,
}

impl Default for OrbitSet {
    fn default() -> Self {
        Self::new(DEFAULT_TOLERANCE)
    }
}

impl OrbitSet {
    pub fn new(tolerance: f64) -> Self {
        assert!(
            tolerance > 0.0 && tolerance.is_finite(),
            "tolerance must be positive"
        );
        Self {
            points: Vec::new(),
            tolerance,
            heads: HashMap::new(),
            next: Vec::new(),
        }
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[NormalizedTriangle] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = NormalizedTriangle> + '_ {
        self.points.iter().copied()
    }

    fn cell(&self, t: NormalizedTriangle) -> (i64, i64) {
        (
            (t.re() / self.tolerance).floor() as i64,
            (t.im() / self.tolerance).floor() as i64,
        )
    }

    /// Stored point within tolerance of `t`, if any.
    pub fn find(&self, t: NormalizedTriangle) -> Option<usize> {
        let (cx, cy) = self.cell(t);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let mut i = self.heads.get(&(cx + dx, cy + dy)).copied().unwrap_or(NIL);
                while i != NIL {
                    if (self.points[i as usize].z() - t.z()).norm() <= self.tolerance {
                        return Some(i as usize);
                    }
                    i = self.next[i as usize];
                }
            }
        }
        None
    }

    pub fn contains(&self, t: NormalizedTriangle) -> bool {
        self.find(t).is_some()
    }

    /// Inserts `t` unless a stored point is within tolerance. Returns
    /// whether it was added.
    pub fn insert(&mut self, t: NormalizedTriangle) -> bool {
        if self.contains(t) {
            return false;
        }
        self.push_unchecked(t);
        true
    }

    fn push_unchecked(&mut self, t: NormalizedTriangle) {
        let idx = u32::try_from(self.points.len()).expect("orbit set exceeds u32 points");
        let cell = self.cell(t);
        let head = self.heads.entry(cell).or_insert(NIL);
        self.next.push(*head);
        *head = idx;
        self.points.push(t);
    }

    /// Sorts points lexicographically by `(re, im)` and rebuilds the grid.
    pub fn canonicalize(&mut self) {
        let mut points = std::mem::take(&mut self.points);
        points.sort_by(|a, b| a.re().total_cmp(&b.re()).then(a.im().total_cmp(&b.im())));
        self.heads.clear();
        self.next.clear();
        for t in points {
            self.push_unchecked(t);
        }
    }

    /// Every point of `self` has a point of `other` within tolerance.
    pub fn is_subset_of(&self, other: &OrbitSet) -> bool {
        self.points.iter().all(|&t| other.contains(t))
    }
}

impl Extend<NormalizedTriangle> for OrbitSet {
    fn extend<I: IntoIterator<Item = NormalizedTriangle>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

impl FromIterator<NormalizedTriangle> for OrbitSet {
    fn from_iter<I: IntoIterator<Item = NormalizedTriangle>>(iter: I) -> Self {
        let mut set = OrbitSet::default();
        set.extend(iter);
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(re: f64, im: f64) -> NormalizedTriangle {
        NormalizedTriangle::from_parts(re, im).unwrap()
    }

    #[test]
    fn merges_within_tolerance() {
        let mut s = OrbitSet::default();
        assert!(s.insert(t(0.3, 0.4)));
        assert!(!s.insert(t(0.3 + 5e-10, 0.4 - 5e-10)));
        assert!(s.insert(t(0.3 + 2e-9, 0.4)));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn merges_across_cell_borders() {
        let mut s = OrbitSet::new(1e-3);
        assert!(s.insert(t(0.2999999, 0.4)));
        assert!(!s.insert(t(0.3000001, 0.4)));
    }

    #[test]
    fn canonical_order() {
        let mut s: OrbitSet = [t(0.4, 0.2), t(0.3, 0.5), t(0.3, 0.3)]
            .into_iter()
            .collect();
        s.canonicalize();
        let v: Vec<_> = s.iter().map(|p| (p.re(), p.im())).collect();
        assert_eq!(v, vec![(0.3, 0.3), (0.3, 0.5), (0.4, 0.2)]);
        assert!(s.contains(t(0.4, 0.2)));
        assert!(!s.insert(t(0.3, 0.5)));
    }

    proptest::proptest! {
        #[test]
        fn stored_points_are_separated(
            pts in proptest::collection::vec((0.3f64..0.301, 0.3f64..0.301), 1..200)
        ) {
            let mut s = OrbitSet::new(1e-4);
            for (re, im) in pts {
                s.insert(t(re, im));
            }
            for (i, a) in s.points().iter().enumerate() {
                for b in &s.points()[i + 1..] {
                    proptest::prop_assert!((a.z() - b.z()).norm() > 1e-4);
                }
            }
        }
    }
}
