//! Groups and crossed modules bundled with the crate.

use std::sync::Arc;

use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::io;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".json")))),*]
    };
}

/// `(name, JSON)` for every bundled group.
pub const GROUPS: &[(&str, &str)] =
    bundled!("Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "V4", "S3", "D4", "Q8");

/// `(name, JSON)` for every bundled crossed module; `broken_peiffer` is deliberately invalid.
pub const CROSSED: &[(&str, &str)] = &[
    ("z2_z4", include_str!("../corpus/crossed_z2_z4.json")),
    ("inner_s3", include_str!("../corpus/crossed_inner_s3.json")),
    (
        "broken_peiffer",
        include_str!("../corpus/crossed_broken_peiffer.json"),
    ),
];

pub fn group_source(name: &str) -> Option<&'static str> {
    GROUPS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn crossed_source(name: &str) -> Option<&'static str> {
    CROSSED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn group(name: &str) -> Result<FiniteGroup> {
    let src =
        group_source(name).ok_or_else(|| Error::Parse(format!("no bundled group named {name}")))?;
    io::group_from_json(src)
}

pub fn group_arc(name: &str) -> Result<Arc<FiniteGroup>> {
    group(name).map(Arc::new)
}

pub fn crossed(name: &str) -> Result<CrossedModule> {
    let src = crossed_source(name)
        .ok_or_else(|| Error::Parse(format!("no bundled crossed module named {name}")))?;
    io::crossed_from_json(src)
}
