//! Cross-check of the CLAHE baseline against a direct per-pixel formulation.

use whe::{clahe_lite, ClaheParams, Error, ImagePlane};

/// Per-pixel reference: locate the surrounding tile centers geometrically and
/// blend the four tile mappings.
fn reference_clahe(plane: &ImagePlane, tiles: usize, clip: f64) -> Vec<u8> {
    let (w, h) = (plane.width(), plane.height());
    let (tw, th) = (w / tiles, h / tiles);
    let mut maps = vec![vec![[0u8; 256]; tiles]; tiles];
    for (ty, row) in maps.iter_mut().enumerate() {
        for (tx, map) in row.iter_mut().enumerate() {
            let mut hist = [0.0f64; 256];
            for y in ty * th..(ty + 1) * th {
                for x in tx * tw..(tx + 1) * tw {
                    hist[usize::from(plane.get(x, y))] += 1.0;
                }
            }
            let limit = (clip * (tw * th) as f64).max(1.0);
            let excess: f64 = hist.iter().filter(|&&c| c > limit).map(|c| c - limit).sum();
            let mut cum = 0.0;
            for (v, slot) in map.iter_mut().enumerate() {
                let c = if excess > 0.0 { hist[v].min(limit) + excess / 256.0 } else { hist[v] };
                cum += c;
                *slot = (255.0 * cum / (tw * th) as f64).round().min(255.0) as u8;
            }
        }
    }
    let axis = |p: usize, size: usize| -> (usize, usize, f64) {
        let pos = (p as f64 - (size as f64 - 1.0) / 2.0) / size as f64;
        if pos <= 0.0 {
            (0, 0, 0.0)
        } else if pos >= (tiles - 1) as f64 {
            (tiles - 1, tiles - 1, 0.0)
        } else {
            let i = pos.floor() as usize;
            (i, i + 1, pos - i as f64)
        }
    };
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        let (j0, j1, fy) = axis(y, th);
        for x in 0..w {
            let (i0, i1, fx) = axis(x, tw);
            let v = usize::from(plane.get(x, y));
            let m = |i: usize, j: usize| f64::from(maps[j][i][v]);
            let value = (1.0 - fy) * ((1.0 - fx) * m(i0, j0) + fx * m(i1, j0))
                + fy * ((1.0 - fx) * m(i0, j1) + fx * m(i1, j1));
            out.push(value.round() as u8);
        }
    }
    out
}

fn two_region_plane() -> ImagePlane {
    let data = (0..64 * 64)
        .map(|i| {
            let (x, y) = (i % 64, i / 64);
            let base = if x < 40 { 60 } else { 150 };
            (base + (x * 7 + y * 13) % 23) as u8
        })
        .collect();
    ImagePlane::new(64, 64, data).unwrap()
}

#[test]
fn matches_reference_on_two_region_image() {
    let plane = two_region_plane();
    for clip in [0.01, 0.05, f64::INFINITY] {
        let params = ClaheParams { tiles_x: 2, tiles_y: 2, clip };
        let got = clahe_lite(&plane, &params).unwrap();
        let expected = reference_clahe(&plane, 2, clip);
        let worst = got
            .data()
            .iter()
            .zip(&expected)
            .map(|(&a, &b)| (i16::from(a) - i16::from(b)).abs())
            .max()
            .unwrap();
        assert!(worst <= 1, "clip {clip}: max deviation {worst}");
    }
}

#[test]
fn too_many_tiles_is_rejected() {
    let plane = ImagePlane::new(4, 4, vec![0; 16]).unwrap();
    let params = ClaheParams { tiles_x: 5, tiles_y: 2, clip: 0.01 };
    assert!(matches!(clahe_lite(&plane, &params), Err(Error::TilesLargerThanImage { .. })));
}
