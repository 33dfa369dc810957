//! Synthetic page layouts and pointer paths.

use rand::Rng;

use crate::geometry::Point;
use crate::scalar::Scalar;
use crate::target::{Rect, TargetMap, TargetRegion, Viewport};

pub const SYNTHETIC_URL: &str = "https://example.com/synthetic";

/// Word tile size used by [`cover_map`].
pub const COVER_WORD_W: f64 = 56.0;
pub const COVER_WORD_H: f64 = 24.0;

fn rect<S: Scalar>(x: f64, y: f64, w: f64, h: f64) -> Rect<S> {
    Rect::new(S::lit(x), S::lit(y), S::lit(w), S::lit(h))
}

/// One block spanning the whole viewport, tiled edge to edge with words, so
/// that every on-screen point lies in a block and in at least one word.
pub fn cover_map<S: Scalar>(viewport: Viewport<f64>) -> TargetMap<S> {
    let mut regions = vec![TargetRegion::block(
        "page",
        rect(0.0, 0.0, viewport.w, viewport.h),
        "synthetic page",
        SYNTHETIC_URL,
    )];
    let mut y = 0.0;
    let mut row = 0;
    while y < viewport.h {
        let h = COVER_WORD_H.min(viewport.h - y);
        let mut x = 0.0;
        let mut col = 0;
        while x < viewport.w {
            let w = COVER_WORD_W.min(viewport.w - x);
            regions.push(TargetRegion::word(
                &format!("w{row}-{col}"),
                "page",
                rect(x, y, w, h),
                &format!("word{row}x{col}"),
                SYNTHETIC_URL,
            ));
            x += COVER_WORD_W;
            col += 1;
        }
        y += COVER_WORD_H;
        row += 1;
    }
    TargetMap::new(Viewport::new(S::lit(viewport.w), S::lit(viewport.h)), regions)
}

const ARTICLE_WORDS: [&str; 12] = [
    "sensor", "autofocus", "lens", "battery", "price", "weight", "stabilized", "video", "grip", "shutter",
    "review", "low-light",
];
const ARTICLE_WORD_WIDTHS: [f64; 5] = [48.0, 72.0, 56.0, 96.0, 64.0];

/// Deterministic article page scaled to the viewport: a title, three text
/// paragraphs tiled with words, and a figure without words. Blocks are
/// separated by gutters.
pub fn article_map<S: Scalar>(viewport: Viewport<f64>) -> TargetMap<S> {
    let (w, h) = (viewport.w, viewport.h);
    let left = 0.125 * w;
    let width = 0.75 * w;
    let half = (width - 0.03 * w) / 2.0;
    let blocks = [
        ("title", left, 0.05 * h, width, 0.075 * h, true),
        ("p1", left, 0.16 * h, width, 0.225 * h, true),
        ("p2", left, 0.425 * h, width, 0.225 * h, true),
        ("figure", left, 0.69 * h, half, 0.275 * h, false),
        ("p3", left + half + 0.03 * w, 0.69 * h, half, 0.275 * h, true),
    ];
    let mut regions = Vec::new();
    let mut k = 0usize;
    for (id, x, y, bw, bh, words) in blocks {
        regions.push(TargetRegion::block(id, rect(x, y, bw, bh), id, SYNTHETIC_URL));
        if !words {
            continue;
        }
        let line_h = 30.0f64.min(bh);
        let mut ly = y;
        let mut line = 0;
        while ly + line_h <= y + bh + 1e-9 {
            let mut lx = x;
            let mut col = 0;
            while lx < x + bw {
                let ww = ARTICLE_WORD_WIDTHS[k % ARTICLE_WORD_WIDTHS.len()].min(x + bw - lx);
                let text = ARTICLE_WORDS[k % ARTICLE_WORDS.len()];
                regions.push(TargetRegion::word(
                    &format!("{id}.{line}.{col}"),
                    id,
                    rect(lx, ly, ww, line_h),
                    text,
                    SYNTHETIC_URL,
                ));
                lx += ww;
                col += 1;
                k += 1;
            }
            ly += line_h;
            line += 1;
        }
    }
    TargetMap::new(Viewport::new(S::lit(w), S::lit(h)), regions)
}

/// Grid of blocks with random margins, each optionally filled with lines of
/// words. Some cells are left empty so that gutters and blank areas occur.
/// The result always passes [`TargetMap::validate`].
pub fn random_layout<S: Scalar, R: Rng>(rng: &mut R, viewport: Viewport<f64>) -> TargetMap<S> {
    let cols = rng.random_range(1..=3);
    let rows = rng.random_range(1..=4);
    let cell_w = viewport.w / cols as f64;
    let cell_h = viewport.h / rows as f64;
    let mut regions = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.random_bool(0.15) {
                continue;
            }
            let id = format!("b{r}-{c}");
            let left = c as f64 * cell_w + rng.random_range(0.0..30.0);
            let top = r as f64 * cell_h + rng.random_range(0.0..30.0);
            let w = ((c + 1) as f64 * cell_w - rng.random_range(0.0..30.0) - left).max(1.0);
            let h = ((r + 1) as f64 * cell_h - rng.random_range(0.0..30.0) - top).max(1.0);
            regions.push(TargetRegion::block(&id, rect(left, top, w, h), &id, SYNTHETIC_URL));
            if rng.random_bool(0.2) {
                continue;
            }
            let line_h = rng.random_range(16.0..28.0);
            let mut y = top + 2.0;
            let mut line = 0;
            while y + line_h <= top + h {
                let mut x = left + 2.0;
                let mut k = 0;
                loop {
                    let ww = rng.random_range(15.0..90.0);
                    if x + ww > left + w {
                        break;
                    }
                    let wid = format!("{id}.{line}.{k}");
                    regions.push(TargetRegion::word(&wid, &id, rect(x, y, ww, line_h), &wid, SYNTHETIC_URL));
                    x += ww + rng.random_range(0.0..10.0);
                    k += 1;
                }
                y += line_h + rng.random_range(0.0..6.0);
                line += 1;
            }
        }
    }
    TargetMap::new(Viewport::new(S::lit(viewport.w), S::lit(viewport.h)), regions)
}

/// Random pointer path: either a short zigzag around a random center (the
/// shape a wiggle leaves) or an arbitrary polyline, with occasional repeated
/// points and excursions slightly past the viewport.
pub fn random_path<S: Scalar, R: Rng>(rng: &mut R, viewport: Viewport<f64>) -> Vec<Point<S>> {
    let n = rng.random_range(1..=40);
    let mut out = Vec::with_capacity(n);
    if rng.random_bool(0.5) {
        let cx = rng.random_range(0.0..viewport.w);
        let cy = rng.random_range(0.0..viewport.h);
        let amp = rng.random_range(5.0..150.0);
        for i in 0..n {
            let side = if i % 2 == 0 { -0.5 } else { 0.5 };
            let x = cx + side * amp + rng.random_range(-3.0..3.0);
            let y = cy + rng.random_range(-6.0..6.0);
            out.push(Point::new(S::lit(x), S::lit(y)));
        }
    } else {
        for _ in 0..n {
            if let (Some(&last), true) = (out.last(), rng.random_bool(0.1)) {
                out.push(last);
                continue;
            }
            let x = rng.random_range(-20.0..viewport.w + 20.0);
            let y = rng.random_range(-20.0..viewport.h + 20.0);
            out.push(Point::new(S::lit(x), S::lit(y)));
        }
    }
    out
}
