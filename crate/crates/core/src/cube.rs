//! Hamilton paths in the hypercube between prescribed endpoints.
//!
//! Q_d is hamilton-laceable: a Hamilton path exists between any two vertices
//! of odd Hamming distance. The recursive construction below splits on a
//! coordinate where the endpoints agree whenever possible, detours through
//! the opposite half at the first edge of the inner path, and otherwise
//! splits on a differing coordinate with a crossing edge.

use crate::error::{contract, Result};

/// Endpoints for a Hamilton path request in Q_d.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubePathSpec {
    pub dim: usize,
    pub start: u64,
    pub end: u64,
}

/// Hamilton path of Q_d from `start` to `end`, as vertex bitmasks.
pub fn cube_path(spec: CubePathSpec) -> Result<Vec<u64>> {
    let CubePathSpec { dim, start, end } = spec;
    contract!(dim >= 1 && dim <= 63, "dimension {dim} out of range");
    let mask = (1u64 << dim) - 1;
    contract!(start <= mask && end <= mask, "endpoint outside the cube");
    contract!(
        (start ^ end).count_ones() % 2 == 1,
        "endpoints must have odd Hamming distance"
    );
    let coords: Vec<usize> = (0..dim).collect();
    Ok(path_rec(&coords, start, end))
}

/// Path over the subcube spanned by `coords`; all other bits of `start` and
/// `end` agree and are carried through unchanged.
fn path_rec(coords: &[usize], start: u64, end: u64) -> Vec<u64> {
    debug_assert_eq!(start & !bits(coords), end & !bits(coords));
    if coords.len() == 1 {
        debug_assert_ne!(start, end);
        return vec![start, end];
    }
    // prefer a split coordinate where the endpoints agree
    if let Some(pos) = coords
        .iter()
        .position(|&c| (start ^ end) & (1 << c) == 0)
    {
        let c = coords[pos];
        let rest: Vec<usize> = coords
            .iter()
            .copied()
            .filter(|&x| x != c)
            .collect();
        let inner = path_rec(&rest, start, end);
        // detour through the opposite half between the first two vertices
        let w1 = inner[0] ^ (1 << c);
        let w2 = inner[1] ^ (1 << c);
        let detour = path_rec(&rest, w1, w2);
        let mut out = Vec::with_capacity(2 * inner.len());
        out.push(inner[0]);
        out.extend(detour);
        out.extend(inner[1..].iter().copied());
        out
    } else {
        // endpoints differ everywhere (odd dimension); cross once
        let c = coords[0];
        let rest: Vec<usize> = coords[1..].to_vec();
        // w agrees with start on c, differs from it in exactly one other
        // coordinate, so both halves get odd-distance endpoint pairs
        let w = start ^ (1 << rest[0]);
        let mut out = path_rec(&rest, start, w);
        let crossed = w ^ (1 << c);
        out.extend(path_rec(&rest, crossed, end));
        out
    }
}

fn bits(coords: &[usize]) -> u64 {
    coords.iter().fold(0, |acc, &c| acc | 1 << c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(dim: usize, start: u64, end: u64) {
        let path = cube_path(CubePathSpec { dim, start, end }).unwrap();
        assert_eq!(path.len(), 1 << dim);
        assert_eq!(path[0], start);
        assert_eq!(*path.last().unwrap(), end);
        let mut seen = std::collections::HashSet::new();
        for w in path.windows(2) {
            assert_eq!((w[0] ^ w[1]).count_ones(), 1);
            assert!(seen.insert(w[0]));
        }
        assert!(seen.insert(*path.last().unwrap()));
    }

    #[test]
    fn one_dimensional() {
        assert_eq!(
            cube_path(CubePathSpec {
                dim: 1,
                start: 0,
                end: 1
            })
            .unwrap(),
            vec![0, 1]
        );
    }

    #[test]
    fn all_odd_pairs_up_to_dim_five() {
        for dim in 1..=5 {
            for start in 0..1u64 << dim {
                for end in 0..1u64 << dim {
                    if (start ^ end).count_ones() % 2 == 1 {
                        check(dim, start, end);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_even_distance() {
        assert!(cube_path(CubePathSpec {
            dim: 3,
            start: 0,
            end: 0b011
        })
        .is_err());
    }
}
