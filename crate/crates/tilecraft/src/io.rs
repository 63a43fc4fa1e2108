//! Tab-separated record formats.
//!
//! | file       | columns                                              |
//! |------------|------------------------------------------------------|
//! | tsv-mbr    | `id  min_x  min_y  max_x  max_y`                     |
//! | tsv-wkt    | `id  WKT`                                            |
//! | layout     | `pid  min_x  min_y  max_x  max_y  build_count`       |
//! | assignment | `pid  oid  replica_flag` (flag is `0` or `1`)        |
//! | pairs      | `r_id  s_id`                                         |
//!
//! Floats are written in their shortest round-trip decimal form, so a dataset
//! written and re-read is bit-identical.

use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use tilecraft_core::join::Pair;
use tilecraft_core::{AssignmentEntry, Dataset, PartitionLayout, Rect, SpatialObject};

use crate::error::{io_err, Error, Result};
use crate::wkt::wkt_mbr;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    TsvMbr,
    TsvWkt,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv-mbr" => Ok(Format::TsvMbr),
            "tsv-wkt" => Ok(Format::TsvWkt),
            _ => Err(Error::Config(format!("unknown format {s:?} (expected tsv-mbr or tsv-wkt)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::TsvMbr => "tsv-mbr",
            Format::TsvWkt => "tsv-wkt",
        })
    }
}

/// Reads a dataset file. Blank lines are skipped.
pub fn ingest(path: &Path, format: Format) -> Result<Dataset> {
    let file = File::open(path).map_err(io_err(path))?;
    parse_dataset(BufReader::new(file), path, format)
}

pub fn parse_dataset(reader: impl BufRead, path: &Path, format: Format) -> Result<Dataset> {
    let mut objects = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |msg: String| Error::Parse { path: path.into(), line: line_no, msg };
        let obj = match format {
            Format::TsvMbr => {
                let cols: Vec<&str> = line.split('\t').collect();
                if cols.len() != 5 {
                    return Err(parse_err(format!("expected 5 columns, found {}", cols.len())));
                }
                let id = parse_id(cols[0]).map_err(parse_err)?;
                let mut v = [0.0; 4];
                for (slot, col) in v.iter_mut().zip(&cols[1..]) {
                    *slot = col
                        .trim()
                        .parse()
                        .map_err(|_| parse_err(format!("bad coordinate {col:?}")))?;
                }
                let mbr =
                    Rect::new(v[0], v[1], v[2], v[3]).map_err(|e| parse_err(e.to_string()))?;
                SpatialObject::new(id, mbr)
            }
            Format::TsvWkt => {
                let (id, wkt) =
                    line.split_once('\t').ok_or_else(|| parse_err("expected id<TAB>WKT".into()))?;
                let id = parse_id(id).map_err(parse_err)?;
                let mbr = wkt_mbr(wkt).map_err(|e| parse_err(e.to_string()))?;
                SpatialObject::with_text(id, mbr, wkt.to_string())
            }
        };
        if !seen.insert(obj.id) {
            return Err(Error::DuplicateId { path: path.into(), line: line_no, id: obj.id });
        }
        objects.push(obj);
    }
    if objects.is_empty() {
        return Err(Error::EmptyInput { path: path.into() });
    }
    Ok(Dataset::new(objects)?)
}

fn parse_id(s: &str) -> std::result::Result<u64, String> {
    s.trim().parse().map_err(|_| format!("bad object id {s:?}"))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).map_err(io_err(path))?))
}

fn write_lines<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let mut w = create(path)?;
    body(&mut w).and_then(|_| w.flush()).map_err(io_err(path))
}

/// Writes the tsv-mbr form of a dataset.
pub fn write_dataset(path: &Path, data: &Dataset) -> Result<()> {
    write_lines(path, |w| {
        for o in data.objects() {
            let r = o.mbr;
            writeln!(w, "{}\t{}\t{}\t{}\t{}", o.id, r.min_x, r.min_y, r.max_x, r.max_y)?;
        }
        Ok(())
    })
}

pub fn write_layout(path: &Path, layout: &PartitionLayout) -> Result<()> {
    write_lines(path, |w| {
        for p in &layout.partitions {
            let r = p.boundary;
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}\t{}",
                p.id, r.min_x, r.min_y, r.max_x, r.max_y, p.build_count
            )?;
        }
        Ok(())
    })
}

/// One row of a layout file.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayoutRow {
    pub id: usize,
    pub boundary: Rect,
    pub build_count: usize,
}

pub fn read_layout(path: &Path) -> Result<Vec<LayoutRow>> {
    read_rows(path, 6, |cols| {
        let id = cols[0].parse().map_err(|_| format!("bad partition id {:?}", cols[0]))?;
        let mut v = [0.0; 4];
        for (slot, col) in v.iter_mut().zip(&cols[1..5]) {
            *slot = col.parse().map_err(|_| format!("bad coordinate {col:?}"))?;
        }
        let boundary = Rect::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())?;
        let build_count = cols[5].parse().map_err(|_| format!("bad build count {:?}", cols[5]))?;
        Ok(LayoutRow { id, boundary, build_count })
    })
}

pub fn write_assignment(path: &Path, entries: &[AssignmentEntry]) -> Result<()> {
    write_lines(path, |w| {
        for e in entries {
            writeln!(w, "{}\t{}\t{}", e.partition_id, e.object_id, u8::from(e.is_replica))?;
        }
        Ok(())
    })
}

pub fn read_assignment(path: &Path) -> Result<Vec<AssignmentEntry>> {
    read_rows(path, 3, |cols| {
        let partition_id =
            cols[0].parse().map_err(|_| format!("bad partition id {:?}", cols[0]))?;
        let object_id = cols[1].parse().map_err(|_| format!("bad object id {:?}", cols[1]))?;
        let is_replica = match cols[2] {
            "0" => false,
            "1" => true,
            other => return Err(format!("bad replica flag {other:?}")),
        };
        Ok(AssignmentEntry { partition_id, object_id, is_replica })
    })
}

pub fn write_pairs(path: &Path, pairs: &[Pair]) -> Result<()> {
    write_lines(path, |w| {
        for (r, s) in pairs {
            writeln!(w, "{r}\t{s}")?;
        }
        Ok(())
    })
}

pub fn read_pairs(path: &Path) -> Result<Vec<Pair>> {
    read_rows(path, 2, |cols| {
        let r = cols[0].parse().map_err(|_| format!("bad id {:?}", cols[0]))?;
        let s = cols[1].parse().map_err(|_| format!("bad id {:?}", cols[1]))?;
        Ok((r, s))
    })
}

fn read_rows<T>(
    path: &Path,
    width: usize,
    parse: impl Fn(&[&str]) -> std::result::Result<T, String>,
) -> Result<Vec<T>> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut rows = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let msg = if cols.len() != width {
            Some(format!("expected {width} columns, found {}", cols.len()))
        } else {
            match parse(&cols) {
                Ok(row) => {
                    rows.push(row);
                    None
                }
                Err(msg) => Some(msg),
            }
        };
        if let Some(msg) = msg {
            return Err(Error::Parse { path: path.into(), line: i + 1, msg });
        }
    }
    Ok(rows)
}
