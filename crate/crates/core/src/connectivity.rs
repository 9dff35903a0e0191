//! Label-map cleanup: the weak two-pass stray-pixel rule and a strict
//! flood-fill mode that guarantees one 4-connected component per label.

use crate::imgproc::Image;
use crate::slic::LabelMap;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ConnectivityMode {
    #[default]
    Weak,
    /// `None` resolves to a quarter of the superpixel area.
    Strict { min_size: Option<usize> },
}

impl ConnectivityMode {
    pub fn strict_min_size(&self, spixel_size: usize) -> Option<usize> {
        match *self {
            ConnectivityMode::Weak => None,
            ConnectivityMode::Strict { min_size } => {
                Some(min_size.unwrap_or(spixel_size * spixel_size / 4).max(1))
            }
        }
    }
}

/// Weak rule for one pixel against a frozen snapshot: a pixel whose in-bounds
/// 4-neighbors all disagree with it takes its left neighbor's label, or the
/// top neighbor's in column 0.
#[inline]
pub fn weak_pixel(src: &[u32], width: usize, height: usize, x: usize, y: usize) -> u32 {
    let i = y * width + x;
    let own = src[i];
    let left = (x > 0).then(|| src[i - 1]);
    let right = (x + 1 < width).then(|| src[i + 1]);
    let up = (y > 0).then(|| src[i - width]);
    let down = (y + 1 < height).then(|| src[i + width]);
    let neighbors = [left, right, up, down];
    let isolated = neighbors.iter().flatten().all(|&n| n != own);
    if !isolated {
        return own;
    }
    left.or(up).unwrap_or(own)
}

/// One weak pass over rows `first_row..`, writing into `out`.
pub fn weak_pass_rows(src: &[u32], width: usize, height: usize, first_row: usize, out: &mut [u32]) {
    for (dy, row) in out.chunks_exact_mut(width).enumerate() {
        let y = first_row + dy;
        for (x, v) in row.iter_mut().enumerate() {
            *v = weak_pixel(src, width, height, x, y);
        }
    }
}

pub fn enforce_weak(labels: &LabelMap) -> LabelMap {
    let (w, h) = labels.dims();
    let mut cur = labels.clone();
    let mut next = labels.clone();
    for _ in 0..2 {
        weak_pass_rows(cur.pixels(), w, h, 0, next.pixels_mut());
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

/// Scan-order flood fill. A component keeps its label when it is the first
/// component of that label and has at least `min_size` pixels; otherwise it
/// takes the final label of the component preceding it in scan order (its
/// left neighbor, or top neighbor in column 0). The component containing
/// pixel (0, 0) has no predecessor and always keeps its label.
pub fn enforce_strict(labels: &LabelMap, min_size: usize) -> LabelMap {
    const UNSET: u32 = u32::MAX;
    let (w, h) = labels.dims();
    let src = labels.pixels();
    let max_label = src.iter().copied().max().unwrap_or(0) as usize;
    let mut owned = vec![false; max_label + 1];
    let mut out = vec![UNSET; w * h];
    let mut visited = vec![false; w * h];
    let mut component = Vec::new();
    let mut stack = Vec::new();

    for start in 0..w * h {
        if visited[start] {
            continue;
        }
        let label = src[start];
        component.clear();
        stack.push(start);
        visited[start] = true;
        while let Some(i) = stack.pop() {
            component.push(i);
            let (x, y) = (i % w, i / w);
            let mut visit = |j: usize| {
                if !visited[j] && src[j] == label {
                    visited[j] = true;
                    stack.push(j);
                }
            };
            if x > 0 {
                visit(i - 1);
            }
            if x + 1 < w {
                visit(i + 1);
            }
            if y > 0 {
                visit(i - w);
            }
            if y + 1 < h {
                visit(i + w);
            }
        }

        let (x, y) = (start % w, start / w);
        let predecessor = if x > 0 {
            Some(out[start - 1])
        } else if y > 0 {
            Some(out[start - w])
        } else {
            None
        };
        let keep = component.len() >= min_size && !owned[label as usize];
        let final_label = match predecessor {
            Some(p) if !keep => p,
            _ => {
                owned[label as usize] = true;
                label
            }
        };
        for &i in &component {
            out[i] = final_label;
        }
    }
    Image::new(w, h, out).expect("dimensions unchanged")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{BTreeMap, BTreeSet};

    fn map(w: usize, h: usize, v: &[u32]) -> LabelMap {
        Image::new(w, h, v.to_vec()).unwrap()
    }

    /// Components per label, found by an independent BFS.
    fn components(labels: &LabelMap) -> Vec<(u32, usize)> {
        let (w, h) = labels.dims();
        let mut seen = vec![false; w * h];
        let mut out = Vec::new();
        for s in 0..w * h {
            if seen[s] {
                continue;
            }
            let l = labels.pixels()[s];
            let mut queue = std::collections::VecDeque::from([s]);
            seen[s] = true;
            let mut size = 0;
            while let Some(i) = queue.pop_front() {
                size += 1;
                let (x, y) = ((i % w) as isize, (i / w) as isize);
                for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    let (nx, ny) = (x + dx, y + dy);
                    if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                        continue;
                    }
                    let j = ny as usize * w + nx as usize;
                    if !seen[j] && labels.pixels()[j] == l {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            out.push((l, size));
        }
        out
    }

    #[test]
    fn weak_uniform_unchanged() {
        let m = Image::filled(6, 4, 9u32);
        assert_eq!(enforce_weak(&m), m);
    }

    #[test]
    fn weak_removes_isolated_center() {
        let m = map(3, 3, &[0, 0, 0, 0, 5, 0, 0, 0, 0]);
        let (w, h) = m.dims();
        let mut once = m.clone();
        weak_pass_rows(m.pixels(), w, h, 0, once.pixels_mut());
        assert_eq!(once, Image::filled(3, 3, 0));
        assert_eq!(enforce_weak(&m), Image::filled(3, 3, 0));
    }

    #[test]
    fn weak_checkerboard_trace() {
        // Pass 1 on [[0,1],[1,0]]: (0,0) has no predecessor, (1,0) and (1,1)
        // take their left neighbor, (0,1) its top neighbor -> [[0,0],[0,1]].
        // Pass 2: only (1,1) is still isolated and takes 0.
        let m = map(2, 2, &[0, 1, 1, 0]);
        let mut once = m.clone();
        weak_pass_rows(m.pixels(), 2, 2, 0, once.pixels_mut());
        assert_eq!(once.pixels(), &[0, 0, 0, 1]);
        assert_eq!(enforce_weak(&m).pixels(), &[0, 0, 0, 0]);
    }

    #[test]
    fn weak_single_pixel() {
        let m = map(1, 1, &[4]);
        assert_eq!(enforce_weak(&m), m);
    }

    #[test]
    fn strict_fixed_point() {
        let m = Image::from_fn(4, 4, |x, y| u32::from(x >= 2) + 2 * u32::from(y >= 2));
        assert_eq!(enforce_strict(&m, 4), m);
    }

    #[test]
    fn strict_absorbs_small_fragment() {
        // Label 7 forms a 20-pixel body plus a 2-pixel fragment in the
        // bottom-right corner, cut off by three label-1 pixels.
        #[rustfmt::skip]
        let m = map(5, 5, &[
            7, 7, 7, 7, 7,
            7, 7, 7, 7, 7,
            7, 7, 7, 7, 7,
            7, 7, 7, 1, 1,
            7, 7, 1, 7, 7,
        ]);
        let sizes: BTreeMap<usize, u32> = components(&m).into_iter().map(|(l, s)| (s, l)).collect();
        assert_eq!(components(&m).iter().filter(|c| c.0 == 7).count(), 2);
        assert_eq!(sizes[&20], 7);
        // Scan order: body (kept), {(3,3),(4,3)} -> left (2,3) = 7,
        // {(2,4)} -> left (1,4) = 7, fragment {(3,4),(4,4)} -> left (2,4) = 7.
        let out = enforce_strict(&m, 4);
        assert_eq!(out, Image::filled(5, 5, 7));
    }

    #[test]
    fn strict_keeps_large_neighbors() {
        #[rustfmt::skip]
        let m = map(6, 3, &[
            0, 0, 0, 1, 1, 1,
            0, 2, 0, 1, 1, 1,
            0, 0, 0, 1, 1, 2,
        ]);
        // Label 2 appears twice, both single pixels; (1,1) -> left 0,
        // (5,2) -> left 1.
        #[rustfmt::skip]
        let want = map(6, 3, &[
            0, 0, 0, 1, 1, 1,
            0, 0, 0, 1, 1, 1,
            0, 0, 0, 1, 1, 1,
        ]);
        assert_eq!(enforce_strict(&m, 2), want);
    }

    #[test]
    fn strict_min_size_one_merges_duplicates_only() {
        let m = map(3, 1, &[2, 5, 2]);
        assert_eq!(enforce_strict(&m, 1).pixels(), &[2, 5, 5]);
        let distinct = map(3, 1, &[2, 5, 1]);
        assert_eq!(enforce_strict(&distinct, 1), distinct);
    }

    #[test]
    fn default_min_size() {
        let mode = ConnectivityMode::Strict { min_size: None };
        assert_eq!(mode.strict_min_size(8), Some(16));
        assert_eq!(mode.strict_min_size(1), Some(1));
        assert_eq!(ConnectivityMode::Weak.strict_min_size(8), None);
    }

    fn arb_labels() -> impl Strategy<Value = LabelMap> {
        (1usize..12, 1usize..12).prop_flat_map(|(w, h)| {
            proptest::collection::vec(0u32..4, w * h)
                .prop_map(move |v| Image::new(w, h, v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn weak_never_invents_labels(m in arb_labels()) {
            let out = enforce_weak(&m);
            prop_assert_eq!(out.dims(), m.dims());
            let input: BTreeSet<_> = m.pixels().iter().collect();
            prop_assert!(out.pixels().iter().all(|l| input.contains(l)));
        }

        #[test]
        fn strict_yields_connected_labels(m in arb_labels(), min_size in 1usize..8) {
            let out = enforce_strict(&m, min_size);
            prop_assert_eq!(out.dims(), m.dims());
            let comps = components(&out);
            let mut per_label = BTreeMap::new();
            for (l, _) in &comps {
                *per_label.entry(*l).or_insert(0) += 1;
            }
            prop_assert!(per_label.values().all(|&n| n == 1), "{:?}", per_label);
            for (i, (_, size)) in comps.iter().enumerate() {
                prop_assert!(i == 0 || *size >= min_size);
            }
            let input: BTreeSet<_> = m.pixels().iter().collect();
            prop_assert!(out.pixels().iter().all(|l| input.contains(l)));
        }
    }
}
