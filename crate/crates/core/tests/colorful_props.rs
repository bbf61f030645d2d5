//! Structural properties of colorful triangulations: the one-monochromatic-
//! edge observations, the hypercube fibers of the reduction, counting, and
//! the reduced projection of the streaming generator.

use std::collections::{BTreeSet, HashMap, HashSet};

use flipgray::colorful::{
    inflate, is_colorful, parity_colors, reduce, Color, ColorfulTriangulation,
};
use flipgray::colorful_gray::{colorful_path, GenColorful};
use flipgray::dissection::Dissection;
use flipgray::gray::KaryGray;
use flipgray::oracle::{count_colorful, enumerate_triangulations};

fn colorful_set(n: usize) -> Vec<ColorfulTriangulation> {
    let colors = parity_colors(n);
    enumerate_triangulations(n)
        .into_iter()
        .filter(|t| is_colorful(t, &colors))
        .map(|t| ColorfulTriangulation::new(t, colors.clone()).unwrap())
        .collect()
}

fn mono(colors: &[Color], e: (usize, usize)) -> bool {
    colors[e.0 - 1] == colors[e.1 - 1]
}

#[test]
fn every_triangle_has_exactly_one_monochromatic_edge() {
    for n in 5..=10usize {
        for t in colorful_set(n) {
            for f in t.dissection.faces() {
                let edges = [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])];
                let count = edges.iter().filter(|&&e| mono(&t.colors, e)).count();
                assert_eq!(count, 1, "N={n} face {f:?}");
            }
        }
    }
}

#[test]
fn monochromatic_edges_off_the_boundary_are_inner() {
    for n in 5..=10usize {
        let colors = parity_colors(n);
        let mono_boundary: HashSet<(usize, usize)> = (1..=n)
            .map(|i| if i == n { (1, n) } else { (i, i + 1) })
            .filter(|&e| mono(&colors, e))
            .collect();
        // with parity colors the only monochromatic boundary edge is (1,N)
        // for odd N and none for even N
        assert_eq!(mono_boundary.len(), n % 2);
        for t in colorful_set(n) {
            // all monochromatic edges of the triangulation other than the
            // boundary ones are diagonals, trivially: check the boundary
            // ones are never diagonals and each diagonal's monochromatic
            // status matches the reduction
            for &d in t.dissection.diagonals() {
                assert!(!mono_boundary.contains(&d));
            }
        }
    }
}

#[test]
fn reduce_inflate_roundtrip_through_ten() {
    for n in 5..=10usize {
        for t in colorful_set(n) {
            let (r, bits) = reduce(&t);
            let q = if n % 2 == 0 { (n - 2) / 2 } else { (n - 3) / 2 };
            assert_eq!(r.quads.len(), q);
            assert_eq!(inflate(&r, &bits).unwrap(), t);
        }
    }
}

#[test]
fn fibers_are_hypercubes() {
    for n in [6usize, 8, 9] {
        let set = colorful_set(n);
        let mut fibers: HashMap<Vec<(usize, usize)>, Vec<(Vec<bool>, String)>> = HashMap::new();
        for t in &set {
            let (r, bits) = reduce(t);
            fibers
                .entry(r.diagonals.clone())
                .or_default()
                .push((bits, t.dissection.to_text()));
        }
        let q = if n % 2 == 0 { (n - 2) / 2 } else { (n - 3) / 2 };
        for (reduced, members) in fibers {
            assert_eq!(members.len(), 1 << q);
            // flips staying inside the fiber are exactly single-bit flips,
            // and every bit flips somewhere: the fiber is a q-cube
            let by_bits: HashSet<&Vec<bool>> = members.iter().map(|(b, _)| b).collect();
            assert_eq!(by_bits.len(), 1 << q);
            for (bits, text) in &members {
                let d = Dissection::from_text(text, 2).unwrap();
                let colors = parity_colors(n);
                let mut inside = 0;
                for (_, next) in d.flips() {
                    if !is_colorful(&next, &colors) {
                        continue;
                    }
                    let tn = ColorfulTriangulation::new(next, colors.clone()).unwrap();
                    let (rn, bn) = reduce(&tn);
                    if rn.diagonals == reduced {
                        let dist = bits.iter().zip(bn.iter()).filter(|(a, b)| a != b).count();
                        assert_eq!(dist, 1);
                        inside += 1;
                    }
                }
                assert_eq!(inside, q, "each bit flips independently");
            }
        }
    }
}

#[test]
fn counting_closed_form_matches_enumeration() {
    for n in 4..=12usize {
        let brute = colorful_set(n).len();
        assert_eq!(
            num_bigint::BigUint::from(brute),
            count_colorful(n),
            "N={n}"
        );
    }
}

#[test]
fn reduced_projection_is_the_ternary_gray_path() {
    // even N: deduplicating the reduced dissections along the emitted path
    // gives exactly the ternary-tree Gray code path in dual form
    for n in [8usize, 10] {
        let q = (n - 2) / 2;
        let path = colorful_path(n).unwrap();
        let colors = parity_colors(n);
        let mut projected = Vec::new();
        for t in path {
            let ct = ColorfulTriangulation::new(t, colors.clone()).unwrap();
            let (r, _) = reduce(&ct);
            let key: BTreeSet<(usize, usize)> = r.diagonals.iter().copied().collect();
            if projected.last() != Some(&key) {
                projected.push(key);
            }
        }
        let mut gen = KaryGray::new(3, q).unwrap();
        let mut expected = Vec::new();
        loop {
            let d = Dissection::from_tree(gen.tree()).unwrap();
            expected.push(d.diagonals().iter().copied().collect::<BTreeSet<_>>());
            if gen.next_rotation().is_none() {
                break;
            }
        }
        assert_eq!(projected, expected, "N={n}");
    }
    // odd N: the projection is a Hamilton path on the reduced dissections
    for n in [9usize, 11] {
        let path = colorful_path(n).unwrap();
        let colors = parity_colors(n);
        let mut projected = Vec::new();
        for t in path {
            let ct = ColorfulTriangulation::new(t, colors.clone()).unwrap();
            let (r, _) = reduce(&ct);
            let key: BTreeSet<(usize, usize)> = r.diagonals.iter().copied().collect();
            if projected.last() != Some(&key) {
                projected.push(key);
            }
        }
        let distinct: HashSet<_> = projected.iter().cloned().collect();
        assert_eq!(distinct.len(), projected.len(), "N={n} revisits a fiber");
        let expected = flipgray::oracle::count_ternary_pairs((n - 3) / 2);
        assert_eq!(num_bigint::BigUint::from(projected.len()), expected);
    }
}

#[test]
fn generator_stays_inside_the_artificial_configuration() {
    let mut gen = GenColorful::new(9).unwrap();
    assert_eq!(gen.frozen_edge(), Some((1, 9)));
    let frozen = (1usize, 9usize);
    // the frozen monochromatic boundary edge never appears in a flip
    while let Some(flip) = gen.next_flip() {
        assert_ne!(flip.remove, frozen);
        assert_ne!(flip.insert, frozen);
        let quad = gen.artificial_quad().unwrap();
        assert!(quad.contains(&1) && quad.contains(&9) && quad.contains(&10));
    }
}
