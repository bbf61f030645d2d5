//! Colorful triangulations: boundary colorings, the reduction that deletes
//! monochromatic inner edges, the fiber bits, and the combination bijection
//! for two-block colorings.

use crate::dissection::{faces_of, Diagonal, Dissection};
use crate::error::{contract, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

/// Run-length encoding of the boundary coloring: `runs[0]` red points, then
/// `runs[1]` blue, alternating. Even length, all entries positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoringSequence {
    runs: Vec<usize>,
}

impl ColoringSequence {
    pub fn new(runs: Vec<usize>) -> Result<ColoringSequence> {
        contract!(!runs.is_empty() && runs.len() % 2 == 0, "run count must be even");
        contract!(runs.iter().all(|&r| r >= 1), "runs must be positive");
        Ok(ColoringSequence { runs })
    }

    /// Comma-separated positive integers, e.g. "2,1,2,2,1,1".
    pub fn parse(text: &str) -> Result<ColoringSequence> {
        let runs: std::result::Result<Vec<usize>, _> =
            text.split(',').map(|p| p.trim().parse::<usize>()).collect();
        let runs = runs.map_err(|e| Error::Parse(format!("bad coloring sequence: {e}")))?;
        ColoringSequence::new(runs).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn runs(&self) -> &[usize] {
        &self.runs
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn n_points(&self) -> usize {
        self.runs.iter().sum()
    }

    /// Number of quadrangles in the reduced dissection: (l-2)/2.
    pub fn quad_count(&self) -> usize {
        (self.runs.len() - 2) / 2
    }

    pub fn colors(&self) -> Vec<Color> {
        let mut out = Vec::with_capacity(self.n_points());
        for (i, &r) in self.runs.iter().enumerate() {
            let c = if i % 2 == 0 { Color::Red } else { Color::Blue };
            out.extend(std::iter::repeat(c).take(r));
        }
        out
    }

    pub fn color(&self, point: usize) -> Color {
        debug_assert!(point >= 1 && point <= self.n_points());
        let mut acc = 0;
        for (i, &r) in self.runs.iter().enumerate() {
            acc += r;
            if point <= acc {
                return if i % 2 == 0 { Color::Red } else { Color::Blue };
            }
        }
        unreachable!()
    }

    /// Monochromatic boundary edges (i, i+1 mod N); there are N - l of them.
    pub fn mono_boundary(&self) -> Vec<Diagonal> {
        let n = self.n_points();
        let colors = self.colors();
        (1..=n)
            .filter(|&i| colors[i - 1] == colors[i % n])
            .map(|i| if i == n { (1, n) } else { (i, i + 1) })
            .collect()
    }
}

/// Alternating-parity colors for Sagan's setting: point i is red iff i is
/// odd. For odd N this makes (N,1) the one monochromatic boundary edge.
pub fn parity_colors(n_points: usize) -> Vec<Color> {
    (1..=n_points)
        .map(|i| if i % 2 == 1 { Color::Red } else { Color::Blue })
        .collect()
}

fn edge_mono(colors: &[Color], e: Diagonal) -> bool {
    colors[e.0 - 1] == colors[e.1 - 1]
}

/// True when no triangle of the triangulation is monochromatic.
pub fn is_colorful(t: &Dissection, colors: &[Color]) -> bool {
    debug_assert_eq!(t.arity(), 2);
    debug_assert_eq!(colors.len(), t.n_points());
    t.faces().iter().all(|f| {
        let (a, b, c) = (colors[f[0] - 1], colors[f[1] - 1], colors[f[2] - 1]);
        !(a == b && b == c)
    })
}

/// A triangulation paired with a coloring under which it is colorful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorfulTriangulation {
    pub dissection: Dissection,
    pub colors: Vec<Color>,
}

impl ColorfulTriangulation {
    pub fn new(dissection: Dissection, colors: Vec<Color>) -> Result<ColorfulTriangulation> {
        contract!(dissection.arity() == 2, "need a triangulation");
        contract!(
            colors.len() == dissection.n_points(),
            "one color per point"
        );
        contract!(
            is_colorful(&dissection, &colors),
            "monochromatic triangle present"
        );
        Ok(ColorfulTriangulation { dissection, colors })
    }
}

/// Reduced dissection: the faces left after deleting all monochromatic
/// inner edges, i.e. q quadrangles and N - l triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedAngulation {
    pub n_points: usize,
    pub colors: Vec<Color>,
    pub diagonals: Vec<Diagonal>,
    /// quadrangles in canonical order (sorted by smallest corner), each ccw
    pub quads: Vec<Vec<usize>>,
    pub triangles: Vec<Vec<usize>>,
}

/// Fiber coordinates: bit j is false (0) when the monochromatic diagonal in
/// quadrangle j joins the two red corners, true (1) for the blue pair.
pub type DiagonalBits = Vec<bool>;

/// Red-red and blue-blue diagonals of a reduced quadrangle.
pub fn quad_diagonals(quad: &[usize], colors: &[Color]) -> ((usize, usize), (usize, usize)) {
    let d1 = (quad[0].min(quad[2]), quad[0].max(quad[2]));
    let d2 = (quad[1].min(quad[3]), quad[1].max(quad[3]));
    debug_assert!(edge_mono(colors, d1) && edge_mono(colors, d2));
    if colors[d1.0 - 1] == Color::Red {
        (d1, d2)
    } else {
        (d2, d1)
    }
}

/// Deletes the monochromatic inner edges of a colorful triangulation and
/// records which diagonal each destroyed quadrangle carried.
pub fn reduce(t: &ColorfulTriangulation) -> (ReducedAngulation, DiagonalBits) {
    let colors = &t.colors;
    let mut kept = Vec::new();
    let mut removed = Vec::new();
    for &d in t.dissection.diagonals() {
        if edge_mono(colors, d) {
            removed.push(d);
        } else {
            kept.push(d);
        }
    }
    let faces = faces_of(t.dissection.n_points(), &kept);
    let mut quads: Vec<Vec<usize>> = Vec::new();
    let mut triangles = Vec::new();
    for f in faces {
        match f.len() {
            3 => triangles.push(f),
            4 => quads.push(f),
            m => unreachable!("reduction produced a {m}-gon"),
        }
    }
    quads.sort_by_key(|f| f[0]);
    let removed: std::collections::HashSet<Diagonal> = removed.into_iter().collect();
    let bits = quads
        .iter()
        .map(|quad| {
            let (rr, bb) = quad_diagonals(quad, colors);
            if removed.contains(&rr) {
                false
            } else {
                debug_assert!(removed.contains(&bb));
                true
            }
        })
        .collect();
    (
        ReducedAngulation {
            n_points: t.dissection.n_points(),
            colors: colors.clone(),
            diagonals: kept,
            quads,
            triangles,
        },
        bits,
    )
}

/// Re-inserts one monochromatic diagonal per quadrangle.
pub fn inflate(r: &ReducedAngulation, bits: &DiagonalBits) -> Result<ColorfulTriangulation> {
    contract!(
        bits.len() == r.quads.len(),
        "expected {} bits, got {}",
        r.quads.len(),
        bits.len()
    );
    let mut diagonals = r.diagonals.clone();
    for (quad, &bit) in r.quads.iter().zip(bits.iter()) {
        let (rr, bb) = quad_diagonals(quad, &r.colors);
        diagonals.push(if bit { bb } else { rr });
    }
    let dissection = Dissection::triangulation(r.n_points, diagonals)?;
    ColorfulTriangulation::new(dissection, r.colors.clone())
}

/// Bijection with (a-1, b-1)-combinations for a two-block coloring: reads
/// the majority color of each triangle along the ray separating red from
/// blue (red majority = 1).
pub fn to_combination(t: &ColorfulTriangulation, alpha: &ColoringSequence) -> Result<Vec<bool>> {
    contract!(alpha.run_count() == 2, "combination bijection needs l = 2");
    let n = alpha.n_points();
    contract!(n == t.dissection.n_points(), "point count mismatch");
    contract!(n >= 3, "need at least three points");
    let colors = alpha.colors();
    // colorful edges sorted along the separating ray; the boundary edges
    // (n,1) and (a, a+1) are its first and last crossings
    let mut crossing: Vec<(usize, usize)> = Vec::new();
    let push = |e: Diagonal, crossing: &mut Vec<(usize, usize)>| {
        if !edge_mono(&colors, e) {
            let (red, blue) = if colors[e.0 - 1] == Color::Red {
                (e.0, e.1)
            } else {
                (e.1, e.0)
            };
            crossing.push((red, blue));
        }
    };
    for i in 1..=n {
        let e = if i == n { (1, n) } else { (i, i + 1) };
        push(e, &mut crossing);
    }
    for &d in t.dissection.diagonals() {
        push(d, &mut crossing);
    }
    // nested chords: closer to the (n,1) gap means smaller red, larger blue
    crossing.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut bits = Vec::with_capacity(n - 2);
    for w in crossing.windows(2) {
        let ((r1, b1), (r2, b2)) = (w[0], w[1]);
        if r1 == r2 {
            // triangle {r1, b2, b1}: two blue corners
            bits.push(false);
        } else {
            debug_assert_eq!(b1, b2);
            bits.push(true);
        }
    }
    Ok(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_triangulations;

    fn alt(n: usize) -> Vec<Color> {
        parity_colors(n)
    }

    #[test]
    fn hexagon_exclusion_count() {
        let colors = alt(6);
        let colorful: Vec<_> = enumerate_triangulations(6)
            .into_iter()
            .filter(|t| is_colorful(t, &colors))
            .collect();
        // 14 triangulations, 12 colorful
        assert_eq!(colorful.len(), 12);
    }

    #[test]
    fn reduce_inflate_roundtrip_hexagon() {
        let colors = alt(6);
        for d in enumerate_triangulations(6) {
            if !is_colorful(&d, &colors) {
                continue;
            }
            let t = ColorfulTriangulation::new(d, colors.clone()).unwrap();
            let (r, bits) = reduce(&t);
            assert_eq!(r.quads.len(), 2);
            assert!(r.triangles.is_empty());
            let back = inflate(&r, &bits).unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn fiber_size_is_two_to_the_q() {
        for n in [6usize, 8] {
            let colors = alt(n);
            let mut by_reduced: std::collections::HashMap<Vec<Diagonal>, usize> =
                std::collections::HashMap::new();
            for d in enumerate_triangulations(n) {
                if !is_colorful(&d, &colors) {
                    continue;
                }
                let t = ColorfulTriangulation::new(d, colors.clone()).unwrap();
                let (r, _) = reduce(&t);
                *by_reduced.entry(r.diagonals.clone()).or_default() += 1;
            }
            let q = (n - 2) / 2;
            assert!(by_reduced.values().all(|&c| c == 1 << q));
        }
    }

    #[test]
    fn two_block_coloring_has_no_quads() {
        let alpha = ColoringSequence::new(vec![3, 3]).unwrap();
        let colors = alpha.colors();
        let d = enumerate_triangulations(6)
            .into_iter()
            .find(|t| is_colorful(t, &colors))
            .unwrap();
        let t = ColorfulTriangulation::new(d, colors).unwrap();
        let (r, bits) = reduce(&t);
        assert!(r.quads.is_empty());
        assert!(bits.is_empty());
        assert_eq!(r.triangles.len(), 4);
    }

    #[test]
    fn combination_single_red_is_all_zeros() {
        let alpha = ColoringSequence::new(vec![1, 4]).unwrap();
        let colors = alpha.colors();
        for d in enumerate_triangulations(5) {
            if is_colorful(&d, &colors) {
                let t = ColorfulTriangulation::new(d, colors.clone()).unwrap();
                let bits = to_combination(&t, &alpha).unwrap();
                assert_eq!(bits, vec![false; 3]);
            }
        }
    }

    #[test]
    fn combination_counts_red_majorities() {
        let alpha = ColoringSequence::new(vec![4, 4]).unwrap();
        let colors = alpha.colors();
        let mut images = std::collections::HashSet::new();
        for d in enumerate_triangulations(8) {
            if !is_colorful(&d, &colors) {
                continue;
            }
            let t = ColorfulTriangulation::new(d, colors.clone()).unwrap();
            let bits = to_combination(&t, &alpha).unwrap();
            assert_eq!(bits.iter().filter(|&&b| b).count(), 3);
            images.insert(bits);
        }
        // bijective onto (3,3)-combinations
        assert_eq!(images.len(), 20);
    }

    #[test]
    fn mono_boundary_count() {
        let alpha = ColoringSequence::new(vec![2, 1, 2, 2, 1, 1]).unwrap();
        assert_eq!(alpha.n_points(), 9);
        assert_eq!(alpha.mono_boundary().len(), 9 - 6);
        assert_eq!(alpha.quad_count(), 2);
    }

    #[test]
    fn rejects_invalid_sequences() {
        assert!(ColoringSequence::new(vec![1, 2, 3]).is_err());
        assert!(ColoringSequence::new(vec![1, 0]).is_err());
        assert!(ColoringSequence::parse("2,x").is_err());
    }
}
