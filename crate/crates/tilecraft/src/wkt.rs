//! Bounding boxes from WKT text by scanning coordinate extrema.
//!
//! No topology is validated; the text only has to be a well-nested list of
//! coordinate tuples under a known geometry tag.

use tilecraft_core::Rect;

use crate::error::{Error, Result};

const TAGS: &[&str] =
    &["POINT", "LINESTRING", "POLYGON", "MULTIPOINT", "MULTILINESTRING", "MULTIPOLYGON"];

pub fn wkt_mbr(text: &str) -> Result<Rect> {
    let text = text.trim();
    let open = text.find('(').ok_or_else(|| Error::Wkt(format!("missing '(' in {text:?}")))?;
    let tag = text[..open].trim().to_ascii_uppercase();
    let tag = tag.strip_suffix(" Z").or_else(|| tag.strip_suffix(" M")).unwrap_or(&tag).trim();
    if !TAGS.contains(&tag) {
        return Err(Error::Wkt(format!("unsupported geometry type {tag:?}")));
    }
    let body = &text[open..];
    let mut depth = 0i32;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 || (depth == 0 && !body[i + 1..].trim().is_empty()) {
                    return Err(Error::Wkt("unbalanced parentheses".into()));
                }
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Wkt("unbalanced parentheses".into()));
    }

    let flat: String = body.chars().map(|c| if c == '(' || c == ')' { ' ' } else { c }).collect();
    let mut mbr: Option<Rect> = None;
    for tuple in flat.split(',') {
        let mut nums = tuple
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| Error::Wkt(format!("bad coordinate {t:?}"))));
        let (x, y) = match (nums.next(), nums.next()) {
            (Some(x), Some(y)) => (x?, y?),
            _ => {
                return Err(Error::Wkt(format!(
                    "coordinate tuple {:?} needs x and y",
                    tuple.trim()
                )))
            }
        };
        for extra in nums {
            extra?;
        }
        let p =
            Rect::new(x, y, x, y).map_err(|_| Error::Wkt(format!("non-finite point {x} {y}")))?;
        mbr = Some(mbr.map_or(p, |m| m.union(&p)));
    }
    mbr.ok_or_else(|| Error::Wkt("no coordinates".into()))
}
