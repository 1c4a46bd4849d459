// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

//! Integer font-unit geometry.
//!
//! All coordinates are in the logical frame: x grows from the start of the
//! word towards its end, y grows upwards from the baseline.

use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Point {
        Point { x, y }
    }
}

impl From<[i32; 2]> for Point {
    fn from([x, y]: [i32; 2]) -> Point {
        Point { x, y }
    }
}

impl From<Point> for [i32; 2] {
    fn from(p: Point) -> [i32; 2] {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

/// Axis-aligned box, serialized as `[x_min, y_min, x_max, y_max]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i32; 4]", into = "[i32; 4]")]
pub struct Rect {
    pub x_min: i32,
    pub y_min: i32,
    pub x_max: i32,
    pub y_max: i32,
}

impl Rect {
    pub const fn new(x_min: i32, y_min: i32, x_max: i32, y_max: i32) -> Rect {
        Rect { x_min, y_min, x_max, y_max }
    }

    pub fn is_ordered(&self) -> bool {
        self.x_min <= self.x_max && self.y_min <= self.y_max
    }

    pub fn width(&self) -> i32 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> i32 {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> i64 {
        self.width() as i64 * self.height() as i64
    }

    pub fn translate(&self, by: Point) -> Rect {
        Rect::new(self.x_min + by.x, self.y_min + by.y, self.x_max + by.x, self.y_max + by.y)
    }

    pub fn span(&self) -> Span {
        Span::new(self.x_min, self.x_max)
    }

    /// Length of the horizontal overlap, 0 when disjoint or touching.
    pub fn x_overlap(&self, other: &Rect) -> i32 {
        self.span().overlap(&other.span())
    }
}

impl From<[i32; 4]> for Rect {
    fn from([a, b, c, d]: [i32; 4]) -> Rect {
        Rect::new(a, b, c, d)
    }
}

impl From<Rect> for [i32; 4] {
    fn from(r: Rect) -> [i32; 4] {
        [r.x_min, r.y_min, r.x_max, r.y_max]
    }
}

/// Half-open horizontal interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: i32,
    pub end: i32,
}

impl Span {
    pub const fn new(start: i32, end: i32) -> Span {
        Span { start, end }
    }

    pub fn len(&self) -> i32 {
        (self.end - self.start).max(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn midpoint(&self) -> i32 {
        (self.start + self.end).div_euclid(2)
    }

    pub fn overlap(&self, other: &Span) -> i32 {
        (self.end.min(other.end) - self.start.max(other.start)).max(0)
    }

    pub fn intersect(&self, other: &Span) -> Option<Span> {
        let s = Span::new(self.start.max(other.start), self.end.min(other.end));
        (!s.is_empty()).then_some(s)
    }

    pub fn shift(&self, dx: i32) -> Span {
        Span::new(self.start + dx, self.end + dx)
    }
}

/// Total length covered by a set of spans.
pub fn union_length(spans: &mut [Span]) -> i32 {
    spans.sort();
    let mut total = 0;
    let mut current: Option<Span> = None;
    for s in spans.iter().filter(|s| !s.is_empty()) {
        current = match current {
            Some(c) if s.start <= c.end => Some(Span::new(c.start, c.end.max(s.end))),
            Some(c) => {
                total += c.len();
                Some(*s)
            }
            None => Some(*s),
        };
    }
    total + current.map_or(0, |c| c.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_merges_overlaps() {
        let mut spans = vec![Span::new(0, 10), Span::new(5, 15), Span::new(20, 25), Span::new(3, 3)];
        assert_eq!(union_length(&mut spans), 20);
        assert_eq!(union_length(&mut []), 0);
    }

    #[test]
    fn rect_serializes_as_array() {
        let r = Rect::new(1, -2, 3, 4);
        assert_eq!(serde_json::to_string(&r).unwrap(), "[1,-2,3,4]");
        assert_eq!(serde_json::from_str::<Rect>("[1,-2,3,4]").unwrap(), r);
    }

    #[test]
    fn midpoint_floors() {
        assert_eq!(Span::new(0, 5).midpoint(), 2);
        assert_eq!(Span::new(-5, 0).midpoint(), -3);
    }
}
