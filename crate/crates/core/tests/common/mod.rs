#![allow(dead_code)]

use std::collections::BTreeSet;

use tametilt::{Finite, QuasiSimpleRef, RegPoint, TubeRegistry};

pub fn one_tube(rank: u32) -> TubeRegistry {
    TubeRegistry::custom(&[("a", rank)], true).unwrap()
}

pub fn fin(s: &str) -> Finite {
    s.parse().unwrap()
}

pub fn qs(s: &str) -> QuasiSimpleRef {
    s.parse().unwrap()
}

pub fn pt(s: &str) -> RegPoint {
    s.parse().unwrap()
}

pub fn fins(items: &[&str]) -> BTreeSet<Finite> {
    items.iter().map(|s| fin(s)).collect()
}

pub fn qss(items: &[&str]) -> BTreeSet<QuasiSimpleRef> {
    items.iter().map(|s| qs(s)).collect()
}
