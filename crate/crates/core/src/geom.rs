//! Rectangles, spatial objects and datasets.
//!
//! Every predicate here uses closed-rectangle semantics: rectangles that only
//! share an edge or a corner intersect, and a rectangle contains itself.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An axis-aligned rectangle with finite coordinates.
///
/// Zero-area rectangles are valid and are how point objects are represented.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

/// A 2-d point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// One of the two coordinate axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

impl Rect {
    /// Builds a rectangle, rejecting non-finite or inverted coordinates.
    pub fn new(min_x: f64, min_y: f64, max_x: f64, max_y: f64) -> Result<Self> {
        let r = Self { min_x, min_y, max_x, max_y };
        if r.is_valid() {
            Ok(r)
        } else {
            Err(Error::InvalidRect { min_x, min_y, max_x, max_y })
        }
    }

    /// Zero-area rectangle at `p`.
    pub fn from_point(p: Point) -> Self {
        Self { min_x: p.x, min_y: p.y, max_x: p.x, max_y: p.y }
    }

    pub fn is_valid(&self) -> bool {
        self.min_x.is_finite()
            && self.min_y.is_finite()
            && self.max_x.is_finite()
            && self.max_y.is_finite()
            && self.min_x <= self.max_x
            && self.min_y <= self.max_y
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn min(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.min_x,
            Axis::Y => self.min_y,
        }
    }

    pub fn max(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.max_x,
            Axis::Y => self.max_y,
        }
    }

    pub(crate) fn set_min(&mut self, axis: Axis, v: f64) {
        match axis {
            Axis::X => self.min_x = v,
            Axis::Y => self.min_y = v,
        }
    }

    pub(crate) fn set_max(&mut self, axis: Axis, v: f64) {
        match axis {
            Axis::X => self.max_x = v,
            Axis::Y => self.max_y = v,
        }
    }

    /// Center of the rectangle.
    pub fn centroid(&self) -> Point {
        Point::new((self.min_x + self.max_x) / 2.0, (self.min_y + self.max_y) / 2.0)
    }

    /// True iff the closed rectangles share at least one point.
    pub fn intersects(&self, other: &Rect) -> bool {
        self.min_x <= other.max_x
            && other.min_x <= self.max_x
            && self.min_y <= other.max_y
            && other.min_y <= self.max_y
    }

    /// True iff `inner` lies entirely within this closed rectangle.
    pub fn contains(&self, inner: &Rect) -> bool {
        self.min_x <= inner.min_x
            && self.min_y <= inner.min_y
            && inner.max_x <= self.max_x
            && inner.max_y <= self.max_y
    }

    pub fn contains_point(&self, p: Point) -> bool {
        self.min_x <= p.x && p.x <= self.max_x && self.min_y <= p.y && p.y <= self.max_y
    }

    /// Smallest rectangle covering both.
    pub fn union(&self, other: &Rect) -> Rect {
        Rect {
            min_x: self.min_x.min(other.min_x),
            min_y: self.min_y.min(other.min_y),
            max_x: self.max_x.max(other.max_x),
            max_y: self.max_y.max(other.max_y),
        }
    }

    /// Area of the intersection of the two interiors (0 when they only touch).
    pub fn overlap_area(&self, other: &Rect) -> f64 {
        let w = self.max_x.min(other.max_x) - self.min_x.max(other.min_x);
        let h = self.max_y.min(other.max_y) - self.min_y.max(other.min_y);
        if w > 0.0 && h > 0.0 {
            w * h
        } else {
            0.0
        }
    }
}

/// Free-function form of [`Rect::intersects`].
pub fn rect_intersects(a: &Rect, b: &Rect) -> bool {
    a.intersects(b)
}

/// Free-function form of [`Rect::contains`].
pub fn rect_contains(outer: &Rect, inner: &Rect) -> bool {
    outer.contains(inner)
}

/// Free-function form of [`Rect::centroid`].
pub fn centroid(r: &Rect) -> Point {
    r.centroid()
}

/// A spatial object: an id, its MBR and the raw geometry text it was read from
/// (empty for synthetic data).
#[derive(Clone, Debug, PartialEq)]
pub struct SpatialObject {
    pub id: u64,
    pub mbr: Rect,
    pub payload_text: String,
}

impl SpatialObject {
    pub fn new(id: u64, mbr: Rect) -> Self {
        Self { id, mbr, payload_text: String::new() }
    }

    pub fn with_text(id: u64, mbr: Rect, payload_text: String) -> Self {
        Self { id, mbr, payload_text }
    }
}

/// Smallest rectangle containing every object's MBR.
pub fn spatial_universe(objects: &[SpatialObject]) -> Result<Rect> {
    let (first, rest) = objects.split_first().ok_or(Error::EmptyDataset)?;
    Ok(rest.iter().fold(first.mbr, |u, o| u.union(&o.mbr)))
}

/// A non-empty collection of objects with unique ids and a cached universe.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    objects: Vec<SpatialObject>,
    universe: Rect,
}

impl Dataset {
    /// Validates ids and MBRs and computes the universe.
    pub fn new(objects: Vec<SpatialObject>) -> Result<Self> {
        let universe = spatial_universe(&objects)?;
        let mut seen = BTreeSet::new();
        for o in &objects {
            if !o.mbr.is_valid() {
                let r = o.mbr;
                return Err(Error::InvalidRect {
                    min_x: r.min_x,
                    min_y: r.min_y,
                    max_x: r.max_x,
                    max_y: r.max_y,
                });
            }
            if !seen.insert(o.id) {
                return Err(Error::DuplicateId(o.id));
            }
        }
        Ok(Self { objects, universe })
    }

    /// Convenience constructor: ids are assigned 0..n in order.
    pub fn from_rects<I: IntoIterator<Item = Rect>>(rects: I) -> Result<Self> {
        Self::new(
            rects.into_iter().enumerate().map(|(i, r)| SpatialObject::new(i as u64, r)).collect(),
        )
    }

    /// Builds a subset of objects whose ids are already known to be unique.
    pub(crate) fn from_unique(objects: Vec<SpatialObject>) -> Result<Self> {
        let universe = spatial_universe(&objects)?;
        Ok(Self { objects, universe })
    }

    pub fn objects(&self) -> &[SpatialObject] {
        &self.objects
    }

    pub fn into_objects(self) -> Vec<SpatialObject> {
        self.objects
    }

    pub fn universe(&self) -> Rect {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    /// Always false for a constructed dataset; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
}
